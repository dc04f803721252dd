#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include "cli.hpp"
#include "testset/core.hpp"

namespace testset::cli {

namespace {

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text(path, text);
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(); }

std::vector<TestIndex> chosen_tests(const LabeledInstance& li, const AnalyzeOptions& o) {
  if (!o.tests.empty()) {
    for (auto k : o.tests) li.instance.check_test_index(k);
    return o.tests;
  }
  if (o.use_exact) {
    auto r = exact(li.instance);
    if (!r) throw std::invalid_argument("exact solver found no test set");
    return r->selected;
  }
  if (!li.planted_optimal.empty()) return li.planted_optimal;
  throw std::invalid_argument("no test set given: pass --tests, --exact, or an instance with a planted optimum");
}

Json analyze_params(const AnalyzeOptions& o, const LabeledInstance* li) {
  Json p;
  if (li) {
    p["input"] = std::filesystem::path(o.input).filename().string();
    p["instance_fingerprint"] = fingerprint(*li);
  }
  if (!o.tests.empty()) p["tests"] = o.tests;
  if (o.use_exact) p["exact"] = true;
  if (o.force) p["force"] = true;
  if (o.m_star) p["m_star"] = *o.m_star;
  if (o.n) p["n"] = *o.n;
  if (o.J) p["J"] = *o.J;
  return p;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json manifest(const std::string& command, const Json& parameters, std::optional<std::uint64_t> seed,
              std::optional<std::string> tie_break) {
  Json m;
  m["tool"] = "testset";
  m["version"] = kVersion;
  m["command"] = command;
  m["parameters"] = parameters.is_null() ? Json::object() : parameters;
  m["seed"] = seed ? Json(*seed) : Json();
  m["tie_break"] = tie_break ? Json(*tie_break) : Json();
  return m;
}

Json size_json(const SizePrediction& s) { return {{"items", s.items}, {"groups", s.groups}, {"tests", s.tests}}; }

Json instance_summary(const Instance& instance) {
  return {{"n", instance.item_count()},
          {"tests", instance.test_count()},
          {"groups", instance.group_count()},
          {"pairs", instance.total_pairs()}};
}

std::optional<SolveResult> solve_with(const Instance& instance, const std::string& alg, const TieBreak& tb,
                                      std::optional<std::size_t> budget) {
  if (alg == "sga") return sga(instance, tb);
  if (alg == "ich") return ich(instance, tb);
  if (alg == "exact") return exact(instance, ExactOptions{budget});
  if (alg == "sc-greedy") return greedy_setcover(transform(instance), tb);
  throw std::invalid_argument("unknown algorithm '" + alg + "'");
}

Json result_json(const SolveResult& result, const LabeledInstance& li) {
  Json r;
  r["algorithm"] = result.algorithm;
  r["universe_size"] = result.universe_size;
  r["size"] = result.size();
  r["selected"] = result.selected;
  if (!li.labels.empty()) {
    Json names = Json::array();
    for (auto k : result.selected) names.push_back(label_text(li.labels.at(k)));
    r["selected_labels"] = std::move(names);
  }
  Json steps = Json::array();
  for (const auto& s : result.steps)
    steps.push_back({{"test", s.test},
                     {"gain", s.gain},
                     {"measure_before", s.measure_before},
                     {"measure_after", s.measure_after},
                     {"tied", s.tied}});
  r["steps"] = std::move(steps);
  r["final_measure"] = result.final_measure;
  return r;
}

std::optional<std::uint64_t> complete_formula_size(const LabeledInstance& li) {
  if (li.generator != "complete") return std::nullopt;
  const auto q = static_cast<std::uint64_t>(li.params.at("q"));
  const auto J = li.params.at("J");
  const auto M = static_cast<std::uint64_t>(li.params.at("M_star"));
  std::uint64_t total = static_cast<std::uint64_t>(li.params.at("adversarial_sc"));
  for (std::int64_t t = 1; t <= J; ++t) total += q * M / (8 * static_cast<std::uint64_t>(t));
  return total;
}

Json reference_json(const LabeledInstance& li, const SolveResult& result, std::optional<std::size_t> m_star) {
  Json r;
  r["m_star"] = m_star ? Json(*m_star) : Json();
  if (m_star && *m_star >= 1) {
    const double N = static_cast<double>(li.instance.total_pairs()), m = static_cast<double>(*m_star);
    r["ratio"] = static_cast<double>(result.size()) / m;
    if (N >= 1.0) r["greedy_upper_bound"] = m * (std::log(N) - std::log(m) + 1.0);
  }
  if (!li.planted_optimal.empty()) r["planted_optimal_size"] = li.planted_optimal.size();
  if (!li.adversarial.empty()) {
    r["adversarial_size"] = li.adversarial.size();
    auto a = li.adversarial, s = result.selected;
    std::sort(a.begin(), a.end());
    std::sort(s.begin(), s.end());
    r["selected_equals_adversarial"] = a == s;
  }
  if (!li.labels.empty()) {
    std::map<std::string, std::size_t> families;
    for (auto k : result.selected) ++families[li.labels.at(k).family];
    Json f = Json::object();
    for (const auto& [name, count] : families) f[name] = count;
    r["selected_families"] = std::move(f);
  }
  if (auto formula = complete_formula_size(li)) {
    r["formula_size"] = *formula;
    r["formula_ratio"] = static_cast<double>(*formula) / static_cast<double>(li.params.at("M_star"));
  }
  if (li.generator == "level") {
    const auto m = level_measures({static_cast<int>(li.params.at("q")), static_cast<int>(li.params.at("J")),
                                   static_cast<int>(li.params.at("t"))});
    r["measure_begin_per_test"] = m.begin_per_test;
    r["measure_end_per_test"] = m.end_per_test;
    r["measure_begin_total"] = m.begin_total;
    r["measure_end_total"] = m.end_total;
  }
  return r;
}

std::optional<std::size_t> known_m_star(const LabeledInstance& li, std::optional<std::size_t> flag, bool use_exact) {
  if (flag) return flag;
  if (li.optimal_known && !li.planted_optimal.empty()) return li.planted_optimal.size();
  if (use_exact) {
    auto r = exact(li.instance);
    if (r) return r->size();
  }
  return std::nullopt;
}

std::string steps_csv(const SolveResult& result, const std::optional<PhaseSchedule>& schedule, bool potential) {
  std::optional<PhaseTrace> trace;
  if (schedule && potential) trace = trace_phases(result, *schedule);
  std::string out = "step,test_id,gain,measure_before,measure_after,phase";
  if (potential) out += ",potential";
  out += '\n';
  for (std::size_t s = 0; s < result.steps.size(); ++s) {
    const auto& st = result.steps[s];
    out += std::to_string(s + 1) + ',' + std::to_string(st.test) + ',' + std::to_string(st.gain) + ',' +
           std::to_string(st.measure_before) + ',' + std::to_string(st.measure_after) + ',';
    if (schedule) out += std::to_string(schedule->phase_of(st.measure_before));
    if (potential) {
      out += ',';
      if (trace && trace->steps[s].potential) out += format_double(*trace->steps[s].potential);
    }
    out += '\n';
  }
  return out;
}

std::string phases_csv(const PhaseTrace& trace) {
  std::string out = "phase,count,budget,within_budget,blank,potential_start,potential_monotone\n";
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  for (const auto& p : trace.phases) {
    out += std::to_string(p.t) + ',' + std::to_string(p.count) + ',';
    if (p.budget) out += format_double(*p.budget);
    out += ',';
    if (p.within_budget) out += b(*p.within_budget);
    out += ',' + b(p.blank) + ',';
    if (p.potential_start) out += format_double(*p.potential_start);
    out += ',' + b(p.potential_monotone) + '\n';
  }
  return out;
}

int analyze_distribution(const AnalyzeOptions& o, std::ostream& out) {
  const LabeledInstance li = load_instance(o.input);
  const auto tests = chosen_tests(li, o);
  PairScanLimits limits;
  limits.force = o.force;
  const auto h = distribution(li.instance, tests, limits);
  Json r;
  r["manifest"] = manifest("analyze distribution", analyze_params(o, &li), std::nullopt, std::nullopt);
  r["testset"] = tests;
  r["counts"] = h.counts;
  r["total"] = h.total;
  r["valid_test_set"] = h.valid_test_set();
  emit(out, o.out, dump(r));
  return kOk;
}

int analyze_lemmas(const AnalyzeOptions& o, std::ostream& out) {
  const LabeledInstance li = load_instance(o.input);
  const auto tests = chosen_tests(li, o);
  PairScanLimits limits;
  limits.force = o.force;
  const auto h = distribution(li.instance, tests, limits);
  const std::size_t m_star = o.m_star.value_or(tests.size());
  const auto c = check_counting_lemmas(h, li.instance.item_count(), m_star);
  const double n = static_cast<double>(li.instance.item_count());
  Json r;
  r["manifest"] = manifest("analyze lemmas", analyze_params(o, &li), std::nullopt, std::nullopt);
  r["testset"] = tests;
  r["m_star"] = m_star;
  r["counts"] = h.counts;
  r["n_log2_n"] = n >= 2 ? n * std::log2(n) : 0.0;
  r["single_bound"] = c.single;
  r["per_level_bound"] = c.per_level;
  r["cumulative_bound"] = c.cumulative;
  r["first_failure"] = c.first_failure ? Json(*c.first_failure) : Json();
  r["all_hold"] = c.all();
  emit(out, o.out, dump(r));
  return kOk;
}

int analyze_claims(const AnalyzeOptions& o, std::ostream& out) {
  const LabeledInstance li = load_instance(o.input);
  const TieBreak tb = TieBreak::parse(o.solve.tie_break, o.solve.priority);
  const SolveResult result = sga(li.instance, tb);
  const auto c = check_claims(result, li);
  Json r;
  r["manifest"] = manifest("analyze claims", analyze_params(o, &li), std::nullopt, tb.name());
  r["claim1"] = c.claim1;
  r["claim2"] = c.claim2;
  r["claim3"] = c.claim3 ? Json(*c.claim3) : Json();
  r["first_violation"] = c.first_violation ? Json(*c.first_violation) : Json();
  r["all_hold"] = c.all();
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json j{{"step", s.step}, {"test", s.test}, {"gain", s.gain}, {"claim1", s.claim1}, {"claim2", s.claim2}};
    j["claim3"] = s.claim3 ? Json(*s.claim3) : Json();
    if (!li.labels.empty()) j["label"] = label_text(li.labels.at(s.test));
    steps.push_back(std::move(j));
  }
  r["steps"] = std::move(steps);
  r["reference"] = reference_json(li, result, known_m_star(li, std::nullopt, false));
  emit(out, o.out, dump(r));
  return kOk;
}

int analyze_ratio(const AnalyzeOptions& o, std::ostream& out) {
  const LabeledInstance li = load_instance(o.input);
  const TieBreak tb = TieBreak::parse(o.solve.tie_break, o.solve.priority);
  const auto m_star = known_m_star(li, o.m_star, o.use_exact);
  if (!m_star) throw std::invalid_argument("optimum unknown: pass --m-star or --exact");
  const auto result = solve_with(li.instance, o.solve.alg, tb);
  if (!result) throw std::invalid_argument("solver found no test set");
  const auto rr = ratio_report(*result, *m_star);
  Json params = analyze_params(o, &li);
  params["alg"] = o.solve.alg;
  Json r;
  r["manifest"] = manifest("analyze ratio", params, std::nullopt, tb.name());
  r["size"] = rr.size;
  r["m_star"] = rr.m_star;
  r["ratio"] = rr.ratio;
  r["ln_n"] = rr.ln_n;
  r["sga_bound"] = 1.1354 * rr.ln_n;
  r["ich_bound"] = rr.ln_n + 1.0;
  r["two_ln_n"] = 2.0 * rr.ln_n;
  r["within_sga_bound"] = rr.within_sga_bound;
  r["within_ich_bound"] = rr.within_ich_bound;
  r["within_two_ln_n"] = rr.within_two_ln_n;
  r["reference"] = reference_json(li, *result, m_star);
  emit(out, o.out, dump(r));
  return kOk;
}

int analyze_bounds(const AnalyzeOptions& o, std::ostream& out) {
  const auto b = bounds(o.n, o.m_star, o.J);
  Json r;
  r["manifest"] = manifest("analyze bounds", analyze_params(o, nullptr), std::nullopt, std::nullopt);
  r["phi_max"] = b.phi_max;
  r["sga_coefficient"] = optional_json(b.sga_coefficient);
  r["sga_upper"] = optional_json(b.sga_upper);
  r["ich_coefficient"] = optional_json(b.ich_coefficient);
  r["harmonic_J"] = optional_json(b.harmonic_J);
  r["lower_coefficient"] = optional_json(b.lower_coefficient);
  emit(out, o.out, dump(r));
  return kOk;
}

}  // namespace testset::cli
