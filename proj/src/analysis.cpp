#include "testset/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "testset/diff_state.hpp"
#include "testset/errors.hpp"

namespace testset {

namespace {

// Membership signature of every item across the given tests.
class Signatures {
 public:
  Signatures(const Instance& instance, std::span<const TestIndex> tests)
      : words_((tests.size() + 63) / 64), bits_(instance.item_count() * words_, 0) {
    for (std::size_t s = 0; s < tests.size(); ++s) {
      instance.check_test_index(tests[s]);
      for (Item i : instance.members(tests[s])) bits_[i * words_ + s / 64] |= std::uint64_t{1} << (s % 64);
    }
  }
  // Number of the tests differentiating {i, j}.
  std::size_t distance(Item i, Item j) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w)
      d += static_cast<std::size_t>(std::popcount(bits_[i * words_ + w] ^ bits_[j * words_ + w]));
    return d;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

void guard(const char* what, std::size_t n, const PairScanLimits& limits) {
  if (!limits.force && n > limits.max_items)
    throw SizeCapError(std::string(what) + ": " + std::to_string(n) + " items exceed the pair-scan limit of " +
                           std::to_string(limits.max_items) + " (force to override)",
                       n, limits.max_items);
}

double nlog2n(double n) { return n * std::log2(n); }

// First pair inside `items` that no test separates.
std::optional<std::pair<Item, Item>> unseparated(const Signatures& sig, std::span<const Item> items) {
  for (std::size_t a = 0; a < items.size(); ++a)
    for (std::size_t b = a + 1; b < items.size(); ++b)
      if (sig.distance(items[a], items[b]) == 0) return std::pair{items[a], items[b]};
  return std::nullopt;
}

LemmaCheck precondition(std::string detail) {
  LemmaCheck c;
  c.status = LemmaStatus::precondition_failed;
  c.detail = std::move(detail);
  return c;
}

std::string pair_text(std::pair<Item, Item> p) {
  return "{" + std::to_string(p.first) + "," + std::to_string(p.second) + "}";
}

void check_items(const Instance& instance, std::span<const Item> items) {
  for (Item i : items) instance.check_item(i);
}

}  // namespace

DistributionHistogram distribution(const Instance& instance, std::span<const TestIndex> testset,
                                   const PairScanLimits& limits) {
  guard("distribution", instance.item_count(), limits);
  const Signatures sig(instance, testset);
  DistributionHistogram h;
  h.counts.assign(testset.size() + 1, 0);
  for (const auto& group : instance.groups())
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b) ++h.counts[sig.distance(group[a], group[b])];
  for (auto c : h.counts) h.total += c;
  return h;
}

CountingLemmaReport check_counting_lemmas(const DistributionHistogram& hist, std::size_t n, std::size_t m_star) {
  CountingLemmaReport r;
  if (n < 2) return r;
  const double base = nlog2n(static_cast<double>(n));
  const double m = static_cast<double>(m_star);
  auto fail = [&](std::size_t t) {
    if (!r.first_failure || t < *r.first_failure) r.first_failure = t;
  };
  if (static_cast<double>(hist.at(1)) > base) {
    r.single = false;
    fail(1);
  }
  PairCount prefix = hist.at(1);
  for (std::size_t t = 2; t < hist.counts.size(); ++t) {
    prefix += hist.at(t);
    const double scale = std::pow(m, static_cast<double>(t - 1));
    if (static_cast<double>(hist.at(t)) > base * scale) {
      r.per_level = false;
      fail(t);
    }
    if (static_cast<double>(prefix) > 2.0 * base * scale) {
      r.cumulative = false;
      fail(t);
    }
  }
  return r;
}

std::string to_string(LemmaStatus s) {
  switch (s) {
    case LemmaStatus::holds: return "holds";
    case LemmaStatus::violated: return "violated";
    case LemmaStatus::precondition_failed: return "precondition_failed";
  }
  return "?";
}

LemmaCheck check_lemma3(const Instance& instance, std::span<const Item> s1, std::span<const Item> s2,
                        std::span<const TestIndex> testset, const PairScanLimits& limits) {
  guard("lemma3", instance.item_count(), limits);
  check_items(instance, s1);
  check_items(instance, s2);
  std::vector<bool> in1(instance.item_count(), false);
  for (Item i : s1) in1[i] = true;
  for (Item j : s2)
    if (in1[j]) return precondition("S1 and S2 share item " + std::to_string(j));
  const Signatures sig(instance, testset);
  if (auto p = unseparated(sig, s1)) return precondition("not a test set of S1: pair " + pair_text(*p));
  if (auto p = unseparated(sig, s2)) return precondition("not a test set of S2: pair " + pair_text(*p));

  LemmaCheck c;
  for (Item i : s1)
    for (Item j : s2)
      if (sig.distance(i, j) == 0) ++c.count;
  c.bound = static_cast<double>(std::min(s1.size(), s2.size()));
  c.status = static_cast<double>(c.count) <= c.bound ? LemmaStatus::holds : LemmaStatus::violated;
  return c;
}

LemmaCheck check_lemma5(const Instance& instance, std::span<const Item> inner, std::span<const Item> outer,
                        std::span<const TestIndex> testset, const PairScanLimits& limits) {
  guard("lemma5", instance.item_count(), limits);
  check_items(instance, inner);
  check_items(instance, outer);
  std::vector<bool> in_outer(instance.item_count(), false), in_inner(instance.item_count(), false);
  for (Item i : outer) in_outer[i] = true;
  for (Item i : inner) {
    if (!in_outer[i]) return precondition("S'' is not inside S': item " + std::to_string(i));
    in_inner[i] = true;
  }
  std::vector<Item> rest;
  for (Item i : outer)
    if (!in_inner[i]) rest.push_back(i);
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());

  const Signatures sig(instance, testset);
  if (auto p = unseparated(sig, inner)) return precondition("not a test set of S'': pair " + pair_text(*p));
  if (auto p = unseparated(sig, rest)) return precondition("not a test set of S' - S'': pair " + pair_text(*p));

  LemmaCheck c;
  for (Item i : inner)
    for (Item j : rest)
      if (sig.distance(i, j) == 1) ++c.count;
  const std::size_t size = inner.size() + rest.size();
  c.bound = size == 0 ? 0.0 : nlog2n(static_cast<double>(size));
  c.status = static_cast<double>(c.count) <= c.bound ? LemmaStatus::holds : LemmaStatus::violated;
  return c;
}

int PhaseSchedule::phase_of(PairCount measure) const {
  const double m = static_cast<double>(measure);
  for (int t = top(); t >= 1; --t)
    if (m >= thresholds[static_cast<std::size_t>(t - 1)]) return t;
  return 0;
}

PhaseSchedule phase_schedule(std::size_t n, std::size_t m_star) {
  if (n < 2) throw std::invalid_argument("phase schedule: n must be >= 2");
  if (m_star < 2) throw std::invalid_argument("phase schedule: m* must be >= 2");
  PhaseSchedule s;
  s.n = n;
  s.m_star = m_star;
  const double nd = static_cast<double>(n), md = static_cast<double>(m_star);
  const double pairs = nd * (nd - 1.0) / 2.0;
  const double unit = 2.0 * nlog2n(nd);  // 2 n log2 n
  const double ratio = (nd - 1.0) / (4.0 * std::log2(nd));

  if (ratio <= 1.0) {
    s.I = 1;
    s.I_clamped = true;
  } else {
    s.I = std::max(1, static_cast<int>(std::ceil(std::log(ratio) / std::log(md))));
    // Settle rounding at the boundary against the defining inequality.
    while (s.I > 1 && unit * std::pow(md, s.I - 1) >= pairs) --s.I;
    while (pairs > unit * std::pow(md, s.I)) ++s.I;
  }

  s.thresholds.assign(static_cast<std::size_t>(s.I) + 2, 0.0);
  s.thresholds[0] = 1.0;
  s.thresholds[1] = nlog2n(nd);
  for (int t = 2; t <= s.I; ++t) s.thresholds[static_cast<std::size_t>(t)] = unit * std::pow(md, t - 1);
  s.thresholds[static_cast<std::size_t>(s.I) + 1] = pairs;

  s.budgets.assign(static_cast<std::size_t>(s.I) + 2, 0.0);
  for (int t = 2; t <= s.I + 1; ++t) {
    const auto u = static_cast<std::size_t>(t);
    s.budgets[u] = md / t * std::log(t * s.thresholds[u] / s.thresholds[u - 1]);
  }
  return s;
}

bool PhaseTrace::budgets_hold() const {
  return std::all_of(phases.begin(), phases.end(), [](const PhaseSummary& p) { return p.within_budget.value_or(true); });
}

bool PhaseTrace::potentials_monotone() const {
  return std::all_of(phases.begin(), phases.end(), [](const PhaseSummary& p) { return p.potential_monotone; });
}

PhaseTrace trace_phases(const SolveResult& result, const PhaseSchedule& schedule) {
  if (result.universe_size != schedule.n)
    throw std::invalid_argument("trace: result has n = " + std::to_string(result.universe_size) +
                                ", schedule has n = " + std::to_string(schedule.n));
  PhaseTrace trace;
  const double m = static_cast<double>(schedule.m_star);
  for (int t = schedule.top(); t >= 1; --t) {
    PhaseSummary p;
    p.t = t;
    if (t >= 2) p.budget = schedule.budgets[static_cast<std::size_t>(t)];
    trace.phases.push_back(p);
  }
  auto summary = [&](int t) -> PhaseSummary& { return trace.phases[static_cast<std::size_t>(schedule.top() - t)]; };

  double last = 0.0;
  bool has_last = false;
  int current = -1;
  for (std::size_t s = 0; s < result.steps.size(); ++s) {
    const auto& step = result.steps[s];
    PhaseStep ps;
    ps.step = s + 1;
    ps.phase = schedule.phase_of(step.measure_before);
    if (ps.phase > current && current != -1)
      throw std::invalid_argument("trace: measures increase along the run");
    auto& p = summary(ps.phase == 0 ? 1 : ps.phase);
    if (ps.phase != current) {
      current = ps.phase;
      has_last = false;
    }
    ++p.count;
    p.blank = false;

    const int t = ps.phase;
    const double base = 1.0 - t / m;
    if (t >= 2 && base > 0.0) {
      const double k = schedule.budgets[static_cast<std::size_t>(t)];
      const double offset = (t - 1.0) / t * schedule.thresholds[static_cast<std::size_t>(t) - 1];
      if (!p.potential_start) {
        p.potential_start = (static_cast<double>(step.measure_before) - offset) * std::pow(base, k);
        last = *p.potential_start;
        has_last = true;
      }
      const double f =
          (static_cast<double>(step.measure_after) - offset) * std::pow(base, k - static_cast<double>(p.count));
      ps.potential = f;
      if (has_last && f > last + 1e-9 * std::max(std::abs(f), std::abs(last))) p.potential_monotone = false;
      last = f;
    }
    trace.steps.push_back(ps);
  }
  for (auto& p : trace.phases)
    if (p.t >= 2 && !p.blank) p.within_budget = static_cast<double>(p.count) < *p.budget + 1.0;
  return trace;
}

ClaimsReport check_claims(const SolveResult& result, const LabeledInstance& labeled) {
  const Instance& inst = labeled.instance;
  ClaimsReport report;

  std::optional<std::size_t> first_phase;
  std::optional<LevelMeasures> measures;
  if (labeled.generator == "level") {
    const LevelParams p{static_cast<int>(labeled.params.at("q")), static_cast<int>(labeled.params.at("J")),
                        static_cast<int>(labeled.params.at("t"))};
    measures = level_measures(p);
    // T'_{t,1}: the first 2^(q-2) * q * J!/t adversarial tests.
    first_phase = (std::size_t{1} << (p.q - 2)) * static_cast<std::size_t>(p.q) *
                  static_cast<std::size_t>(factorial(p.J) / static_cast<std::uint64_t>(p.t));
    report.claim3 = true;
  }

  std::vector<std::size_t> position(inst.test_count(), SIZE_MAX);
  for (std::size_t r = 0; r < labeled.adversarial.size(); ++r) position[labeled.adversarial[r]] = r;

  DiffState state(inst);
  for (std::size_t s = 0; s < result.selected.size(); ++s) {
    const TestIndex k = result.selected[s];
    inst.check_test_index(k);
    ClaimStep c;
    c.step = s + 1;
    c.test = k;
    c.gain = state.gain(k);
    c.gain_matches = s >= result.steps.size() || result.steps[s].gain == c.gain;

    const std::size_t from = position[k] == SIZE_MAX ? 0 : position[k] + 1;
    for (std::size_t r = from; r < labeled.adversarial.size(); ++r) {
      const TestIndex other = labeled.adversarial[r];
      if (!state.is_selected(other) && state.gain(other) > c.gain) {
        c.claim1 = false;
        break;
      }
    }
    for (TestIndex other : labeled.planted_optimal)
      if (state.gain(other) > c.gain) {
        c.claim2 = false;
        break;
      }
    if (first_phase && s < *first_phase)
      c.claim3 = c.gain <= measures->begin_per_test && c.gain >= measures->end_per_test;

    report.claim1 = report.claim1 && c.claim1;
    report.claim2 = report.claim2 && c.claim2;
    if (c.claim3) report.claim3 = *report.claim3 && *c.claim3;
    const bool ok = c.gain_matches && c.claim1 && c.claim2 && c.claim3.value_or(true);
    if (!ok && !report.first_violation) report.first_violation = c.step;
    if (!c.gain_matches) report.claim1 = report.claim2 = false;
    report.steps.push_back(c);
    state.refine(k);
  }
  return report;
}

double phi(double x) {
  if (!(x > 0.0)) throw std::domain_error("phi: x must be positive");
  return (std::log(x) - 1.0) / x;
}

BoundReport bounds(std::optional<std::size_t> n, std::optional<std::size_t> m_star, std::optional<int> J) {
  BoundReport r;
  r.phi_max = phi(std::exp(2.0));
  if (n) {
    if (*n < 2) throw std::domain_error("bounds: n must be >= 2");
    const double ln_n = std::log(static_cast<double>(*n));
    r.ich_coefficient = ln_n + 1.0;
    if (m_star) {
      if (*m_star < 2) throw std::domain_error("bounds: m* must be >= 2");
      const double coef = 1.0 + phi(ln_n / std::log(static_cast<double>(*m_star)));
      r.sga_coefficient = coef;
      r.sga_upper = coef * static_cast<double>(*m_star) * ln_n;
    }
  } else if (m_star) {
    throw std::domain_error("bounds: m* needs n");
  }
  if (J) {
    if (*J < 1) throw std::domain_error("bounds: J must be >= 1");
    r.harmonic_J = harmonic(*J);
    r.lower_coefficient = 1.0 + (*r.harmonic_J / (8.0 * std::numbers::ln2) - 1.0) / (*J + 1.0);
  }
  return r;
}

RatioReport ratio_report(const SolveResult& result, std::size_t m_star) {
  if (m_star < 2) throw std::invalid_argument("ratio: m* must be >= 2");
  if (result.universe_size < 2) throw std::invalid_argument("ratio: n must be >= 2");
  RatioReport r;
  r.size = result.size();
  r.m_star = m_star;
  r.ratio = static_cast<double>(r.size) / static_cast<double>(m_star);
  r.ln_n = std::log(static_cast<double>(result.universe_size));
  r.within_sga_bound = r.ratio <= 1.1354 * r.ln_n;
  r.within_ich_bound = r.ratio <= r.ln_n + 1.0;
  r.within_two_ln_n = r.ratio <= 2.0 * r.ln_n;
  return r;
}

}  // namespace testset
