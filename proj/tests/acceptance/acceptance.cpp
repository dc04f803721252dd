// One pass/fail line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "cli/formats.hpp"
#include "oracles.hpp"
#include "testset/analysis.hpp"
#include "testset/core.hpp"
#include "testset/errors.hpp"
#include "testset/generators.hpp"
#include "testset/solvers.hpp"

using namespace testset;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;  // printed under the verdict line
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::vector<TestIndex> sorted(std::vector<TestIndex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Seeded feasible random instances with an exact optimum.
struct Solved {
  Instance instance;
  SolveResult optimum;
};

std::vector<Solved> solved_suite(std::uint64_t seed, std::size_t count, std::size_t n_min, std::size_t n_max) {
  std::mt19937_64 rng(seed);
  std::vector<Solved> out;
  while (out.size() < count) {
    const std::size_t n = n_min + rng() % (n_max - n_min + 1);
    const std::size_t m = n / 2 + 2 + rng() % (n / 2 + 4);
    const auto r = random_instance(n, m, 0.3 + 0.4 * static_cast<double>(rng() % 1000) / 1000.0, rng());
    if (!r.feasible) continue;
    auto opt = exact(r.instance);
    if (!opt) continue;
    out.push_back({r.instance, std::move(*opt)});
  }
  return out;
}

Verdict criterion1() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = atom({3, 2});
  const auto r = sga(a.instance, TieBreak::natural_order());
  const double secs = seconds_since(t0);

  DiffState start(a.instance);
  bool gains_ok = true;
  for (auto k : a.adversarial) gains_ok = gains_ok && start.gain(k) == 1024;
  for (auto k : a.planted_optimal) gains_ok = gains_ok && start.gain(k) == 896;
  const bool exact_set = sorted(r.selected) == sorted(a.adversarial);
  const bool natural = r.selected == a.adversarial;

  std::vector<std::size_t> gains;
  for (const auto& s : r.steps) gains.push_back(s.gain);
  v.pass = a.instance.item_count() == 128 && gains_ok && exact_set && natural && secs < 1.0;
  v.detail = "n=" + std::to_string(a.instance.item_count()) + ", initial gains T'=1024/T*=896: " +
             (gains_ok ? "yes" : "no") + ", selected set == T' (12 tests): " + (exact_set ? "yes" : "no") +
             ", in natural order: " + (natural ? "yes" : "no") + ", " + fmt(secs, 3) + " s";
  v.notes.push_back("selected " + join(r.selected) + " (natural order is " + join(a.adversarial) + ")");
  v.notes.push_back("step gains " + join(gains));
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const LevelParams p{2, 2, 2};
  const auto l = level(p);
  const auto r = sga(l.instance, TieBreak::natural_order());
  const auto claims = check_claims(r, l);
  const double secs = seconds_since(t0);

  const std::uint64_t N = l.instance.item_count();
  const std::uint64_t begin = (std::uint64_t{1} << (p.q * (p.t - 1))) * N;   // 2^(q(t-1)) N
  const std::uint64_t end = 2 * (std::uint64_t{1} << (p.q * p.t)) * N >> (2 * p.q);  // 2 * 2^(q(t-2)) N
  const std::size_t first = (std::size_t{1} << (p.q - 2)) * p.q * (factorial(p.J) / p.t);

  std::vector<TestIndex> head(r.selected.begin(), r.selected.begin() + std::min(first, r.selected.size()));
  std::vector<TestIndex> expect_head(l.adversarial.begin(), l.adversarial.begin() + first);
  const bool first_phase = sorted(head) == sorted(expect_head);
  const bool gain_begin = !r.steps.empty() && r.steps.front().gain == begin;
  const bool gain_end = r.steps.size() >= first && r.steps[first - 1].gain == end;
  const bool completes = sorted(r.selected) == sorted(l.adversarial);

  v.pass = N == 128 && first_phase && gain_begin && gain_end && completes && claims.all() && secs < 10.0;
  v.detail = "N=" + std::to_string(N) + ", T'_{t,1} first: " + (first_phase ? "yes" : "no") + ", first gain " +
             std::to_string(r.steps.front().gain) + " (#begin " + std::to_string(begin) + "), last T'_{t,1} gain " +
             std::to_string(r.steps[first - 1].gain) + " (#end " + std::to_string(end) + "), returns T': " +
             (completes ? "yes" : "no") + ", claims 1-3 every step: " + (claims.all() ? "yes" : "no") + ", " +
             fmt(secs, 3) + " s";
  return v;
}

struct CompleteRun {
  bool ok = false;
  std::string text;
};

CompleteRun complete_run(int q, int J) {
  CompleteRun c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto li = complete({q, J});
    const auto r = sga(li.instance, TieBreak::natural_order());
    const double secs = seconds_since(t0);
    std::size_t stars = 0, t0_count = 0, level_first = 0;
    for (auto k : r.selected) {
      const auto& l = li.labels[k];
      if (l.family == "T*") ++stars;
      if (l.family == "T'" && l.level == 0) ++t0_count;
      if (l.family == "T'" && l.level && *l.level >= 1) ++level_first;
    }
    const std::uint64_t M = static_cast<std::uint64_t>(li.params.at("M_star"));
    const std::uint64_t N = static_cast<std::uint64_t>(li.params.at("N"));
    std::uint64_t formula_levels = 0;  // (q M*/8) H_J as an exact integer sum
    for (int t = 1; t <= J; ++t) formula_levels += static_cast<std::uint64_t>(q) * M / (8 * t);
    const bool exact_t = sorted(r.selected) == sorted(li.adversarial) && stars == 0;
    const bool count_ok = r.size() == t0_count + formula_levels && level_first == formula_levels;
    const double lower = (M - 1.0) * (std::log(double(N)) - std::log(double(M))) - double(M);
    const bool sc_ok = static_cast<double>(t0_count) >= lower;
    c.ok = exact_t && count_ok && sc_ok && secs < 60.0;
    c.text = "q=" + std::to_string(q) + " J=" + std::to_string(J) + ": n=" + std::to_string(li.instance.item_count()) +
             ", |SGA|=" + std::to_string(r.size()) + " = |T'_0| " + std::to_string(t0_count) +
             " + (qM*/8)H_J " + std::to_string(formula_levels) + (count_ok ? " (exact)" : " (MISMATCH)") +
             ", T* picked " + std::to_string(stars) + ", equals T': " + (exact_t ? "yes" : "no") +
             ", |T'_0| >= " + fmt(lower) + ": " + (sc_ok ? "yes" : "no") + ", " + fmt(secs, 3) + " s";
  } catch (const std::exception& e) {
    c.text = "q=" + std::to_string(q) + " J=" + std::to_string(J) + ": construction failed: " + e.what();
  }
  return c;
}

Verdict criterion3() {
  Verdict v;
  const auto a = complete_run(2, 2), b = complete_run(2, 3);
  v.pass = a.ok && b.ok;
  v.detail = a.text + "; " + b.text;
  for (int J : {2, 3}) v.notes.push_back("supplementary (not scored) " + complete_run(3, J).text);
  return v;
}

Verdict criterion4() {
  Verdict v;
  std::mt19937_64 rng(4004);
  std::size_t mismatches = 0, cases = 0;
  while (cases < 200) {
    const std::size_t n = 2 + rng() % 39;
    const std::size_t m = 6 + rng() % 30;
    const auto r = random_instance(n, m, 0.5, rng());
    if (!r.feasible) continue;
    ++cases;
    if (!verify_isomorphism(r.instance, TieBreak::natural_order())) ++mismatches;
  }
  v.pass = mismatches == 0;
  v.detail = std::to_string(cases) + " random instances (n <= 40), " + std::to_string(mismatches) + " mismatches";
  return v;
}

Verdict criterion5(const std::vector<Solved>& suite) {
  Verdict v;
  std::size_t pass = 0;
  for (const auto& s : suite) {
    const auto h = distribution(s.instance, s.optimum.selected);
    if (h.valid_test_set() && check_counting_lemmas(h, s.instance.item_count(), s.optimum.size()).all()) ++pass;
  }
  v.pass = pass == suite.size();
  v.detail = std::to_string(pass) + "/" + std::to_string(suite.size()) +
             " exactly solved instances (n <= 12) satisfy B_1, B_t and cumulative bounds";
  return v;
}

Verdict criterion6(const std::vector<const Solved*>& all) {
  Verdict v;
  std::size_t pass = 0;
  double worst = 0.0;
  for (const auto* s : all) {
    const double n = static_cast<double>(s->instance.item_count());
    const double m = static_cast<double>(s->optimum.size());
    const double bound = m * (std::log(n * (n - 1) / 2) - std::log(m) + 1);
    const auto size = static_cast<double>(sga(s->instance).size());
    if (size <= bound) ++pass;
    worst = std::max(worst, size / bound);
  }
  v.pass = pass == all.size();
  v.detail = std::to_string(pass) + "/" + std::to_string(all.size()) +
             " instances with exact m* satisfy |SGA| <= m*(ln C(n,2) - ln m* + 1); max |SGA|/bound " + fmt(worst, 4);
  return v;
}

Verdict criterion7(const std::vector<Solved>& suite) {
  Verdict v;
  std::size_t pass = 0, phases = 0, used = 0;
  for (const auto& s : suite) {
    if (s.optimum.size() < 2) continue;
    ++used;
    const auto trace = trace_phases(sga(s.instance), phase_schedule(s.instance.item_count(), s.optimum.size()));
    for (const auto& p : trace.phases) phases += p.t >= 2 && !p.blank;
    if (trace.budgets_hold() && trace.potentials_monotone()) ++pass;
  }
  v.pass = used == suite.size() && pass == used;
  v.detail = std::to_string(pass) + "/" + std::to_string(used) + " instances: |T_t| < k_t + 1 and f non-increasing (" +
             std::to_string(phases) + " non-blank phases t >= 2 audited)";
  return v;
}

Verdict criterion8() {
  Verdict v;
  const auto b = bounds(std::nullopt, std::nullopt, 391);
  const double lower = *b.lower_coefficient;
  const bool lower_ok = lower >= 1.0004609 && lower < 1.00047;
  const double phi_err = std::abs(phi(std::exp(2.0)) - std::exp(-2.0));
  const bool phi_ok = phi_err <= 1e-12;

  double worst = 0.0;
  std::size_t points = 0;
  std::vector<std::size_t> ns;
  for (double x = std::log(4.0); x <= std::log(1e6) + 1e-9; x += (std::log(1e6) - std::log(4.0)) / 400)
    ns.push_back(static_cast<std::size_t>(std::llround(std::exp(x))));
  ns.push_back(1000000);
  for (auto n : ns) {
    std::vector<std::size_t> ms;
    if (n <= 2000) {
      for (std::size_t m = 2; m < n; ++m) ms.push_back(m);
    } else {
      for (double y = std::log(2.0); y <= std::log(double(n - 1)); y += std::log(double(n - 1) / 2) / 2000)
        ms.push_back(static_cast<std::size_t>(std::llround(std::exp(y))));
      ms.push_back(n - 1);
      // Around the maximizer ln n / ln m* = e^2.
      const double m_peak = std::exp(std::log(double(n)) / std::exp(2.0));
      for (int d = -3; d <= 3; ++d) {
        const double m = std::floor(m_peak) + d;
        if (m >= 2 && m <= n - 1) ms.push_back(static_cast<std::size_t>(m));
      }
    }
    for (auto m : ms) {
      worst = std::max(worst, *bounds(n, m, std::nullopt).sga_coefficient);
      ++points;
    }
  }
  const bool grid_ok = worst <= 1.13534;
  v.pass = lower_ok && phi_ok && grid_ok;
  v.detail = "lower coefficient(J=391) " + fmt(lower, 10) + (lower_ok ? " in" : " NOT in") +
             " [1.0004609, 1.00047); |phi(e^2) - e^-2| = " + fmt(phi_err, 3) + "; max SGA coefficient " +
             fmt(worst, 8) + " over " + std::to_string(points) + " (n, m*) grid points" + (grid_ok ? "" : " EXCEEDS 1.13534");
  return v;
}

Verdict criterion9() {
  Verdict v;
  std::mt19937_64 rng(9009);
  std::size_t equal = 0;
  const std::size_t cases = 1000;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t n = 1 + rng() % 64;
    const std::size_t m = rng() % 12;
    const auto base = oracle::random_instance(rng, n, m, 0.05 + 0.9 * static_cast<double>(rng() % 100) / 100.0);
    std::vector<std::vector<Item>> tests;
    for (std::size_t k = 0; k < m; ++k) tests.emplace_back(base.members(k).begin(), base.members(k).end());
    const std::size_t groups = 1 + (c % 3 == 0 ? rng() % std::min<std::size_t>(n, 5) : 0);
    const Instance inst(n, oracle::random_groups(rng, n, groups), tests);
    std::vector<TestIndex> sel;
    const std::size_t picks = m == 0 ? 0 : rng() % (m + 3);
    for (std::size_t s = 0; s < picks; ++s) sel.push_back(rng() % m);
    if (diff_measure(inst, sel) == oracle::measure(inst, sel)) ++equal;
  }
  v.pass = equal == cases;
  v.detail = std::to_string(equal) + "/" + std::to_string(cases) + " (instance, selection) cases with n <= 64 match brute force";
  return v;
}

int quiet(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

Verdict criterion10() {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / "testset_acceptance";
  fs::remove_all(root);
  const fs::path a = root / "a", b = root / "b";
  fs::create_directories(a);
  fs::create_directories(b);

  const std::vector<std::vector<std::string>> fixtures{
      {"compact.json", "compact", "--q", "4"},
      {"atom.json", "atom", "--q", "3", "--t", "2"},
      {"level.json", "level", "--q", "2", "--J", "2", "--t", "2"},
      {"complete.json", "complete", "--q", "3", "--J", "2"},
      {"scadv.json", "sc-adv", "--N", "256", "--m-star", "8"},
      {"random1.json", "random", "--n", "12", "--m", "10", "--seed", "1"},
      {"random2.json", "random", "--n", "30", "--m", "20", "--density", "0.3", "--seed", "77"},
  };
  std::size_t identical = 0, roundtrip = 0, total = 0, failures = 0;
  auto same = [&](const fs::path& x, const fs::path& y) {
    ++total;
    if (cli::read_text(x) == cli::read_text(y)) ++identical;
  };
  try {
    for (const auto& f : fixtures) {
      for (const auto& dir : {a, b}) {
        std::vector<std::string> args{"gen", f[1]};
        args.insert(args.end(), f.begin() + 2, f.end());
        args.push_back("-o");
        args.push_back((dir / f[0]).string());
        if (quiet(args) != 0) ++failures;
        for (const std::string alg : {"sga", "ich"}) {
          const auto report = dir / (f[0] + "." + alg + ".report.json");
          const auto trace = dir / (f[0] + "." + alg + ".csv");
          if (quiet({"solve", (dir / f[0]).string(), "--alg", alg, "-o", report.string(), "--trace", trace.string()}) != 0)
            ++failures;
        }
      }
      same(a / f[0], b / f[0]);
      same(a / (f[0] + ".size.json"), b / (f[0] + ".size.json"));
      for (const std::string alg : {"sga", "ich"}) {
        same(a / (f[0] + "." + alg + ".report.json"), b / (f[0] + "." + alg + ".report.json"));
        same(a / (f[0] + "." + alg + ".csv"), b / (f[0] + "." + alg + ".csv"));
      }
      // Round trip: parse, re-serialize, compare bytes and values.
      const auto text = cli::read_text(a / f[0]);
      const auto li = cli::instance_from_json(cli::Json::parse(text));
      const auto again = cli::dump(cli::instance_to_json(li));
      if (again == text && cli::instance_from_json(cli::Json::parse(again)) == li) ++roundtrip;
    }
    const auto suite = root / "suite.json";
    cli::write_text(suite, R"({"algorithms": ["sga", "ich"], "runs": [{"family": "random", "n": [8, 12], "m": 10}]})");
    for (const auto& dir : {a, b})
      if (quiet({"bench", suite.string(), "--seeds", "10", "-o", (dir / "bench").string(), "--jobs", "3"}) != 0) ++failures;
    same(a / "bench" / "bench.csv", b / "bench" / "bench.csv");
    same(a / "bench" / "manifest.json", b / "bench" / "manifest.json");
  } catch (const std::exception& e) {
    v.detail = std::string("error: ") + e.what();
    return v;
  }
  v.pass = failures == 0 && identical == total && roundtrip == fixtures.size();
  v.detail = std::to_string(identical) + "/" + std::to_string(total) + " artifacts byte-identical across reruns, " +
             std::to_string(roundtrip) + "/" + std::to_string(fixtures.size()) + " fixtures round-trip, " +
             std::to_string(failures) + " command failures";
  return v;
}

}  // namespace

int main() {
  const auto five = solved_suite(5005, 300, 2, 12);
  const auto seven = solved_suite(7007, 100, 8, 16);
  std::vector<const Solved*> with_m_star;
  for (const auto& s : five) with_m_star.push_back(&s);
  for (const auto& s : seven) with_m_star.push_back(&s);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"atom behavior", criterion1},
      {"level behavior", criterion2},
      {"complete instance", criterion3},
      {"isomorphism", criterion4},
      {"counting lemmas", [&] { return criterion5(five); }},
      {"upper-bound consistency", [&] { return criterion6(with_m_star); }},
      {"phase analysis", [&] { return criterion7(seven); }},
      {"bound formulas", criterion8},
      {"oracle equivalence", criterion9},
      {"determinism and formats", criterion10},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Verdict v;
    try {
      v = criteria[c].second();
    } catch (const std::exception& e) {
      v.detail = std::string("error: ") + e.what();
    }
    failed += !v.pass;
    std::cout << "criterion " << c + 1 << " [" << (v.pass ? "PASS" : "FAIL") << "] " << criteria[c].first << ": "
              << v.detail << "\n";
    for (const auto& note : v.notes) std::cout << "    " << note << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
