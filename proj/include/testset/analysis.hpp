#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "testset/generators.hpp"
#include "testset/instance.hpp"
#include "testset/solvers.hpp"

namespace testset {

// Quadratic checks refuse instances above max_items unless forced.
struct PairScanLimits {
  std::size_t max_items = 4096;
  bool force = false;
};

// counts[t] = intra-group pairs differentiated by exactly t of the tests.
struct DistributionHistogram {
  std::vector<PairCount> counts;
  PairCount total = 0;

  PairCount at(std::size_t t) const { return t < counts.size() ? counts[t] : 0; }
  bool valid_test_set() const { return at(0) == 0; }
};

DistributionHistogram distribution(const Instance& instance, std::span<const TestIndex> testset,
                                   const PairScanLimits& limits = {});

// B_1 <= n log2 n; B_t <= n log2 n m*^(t-1); sum_{s<=t} B_s <= 2 n log2 n m*^(t-1).
struct CountingLemmaReport {
  bool single = true;      // the B_1 bound
  bool per_level = true;   // B_t, t >= 2
  bool cumulative = true;  // prefix sums, t >= 2
  std::optional<std::size_t> first_failure;  // smallest failing t

  bool all() const { return single && per_level && cumulative; }
};

CountingLemmaReport check_counting_lemmas(const DistributionHistogram& hist, std::size_t n,
                                          std::size_t m_star);

enum class LemmaStatus { holds, violated, precondition_failed };
std::string to_string(LemmaStatus s);

struct LemmaCheck {
  LemmaStatus status = LemmaStatus::holds;
  PairCount count = 0;  // cross pairs of the audited kind
  double bound = 0.0;
  std::string detail;
};

// Cross pairs between disjoint S1, S2 that no test differentiates, against
// min(|S1|, |S2|). Requires the tests to separate S1 and S2 internally.
LemmaCheck check_lemma3(const Instance& instance, std::span<const Item> s1, std::span<const Item> s2,
                        std::span<const TestIndex> testset, const PairScanLimits& limits = {});

// Cross pairs between S'' and S' - S'' differentiated by exactly one test,
// against |S'| log2 |S'|. Requires S'' within S' and the tests to separate
// S'' and S' - S'' internally.
LemmaCheck check_lemma5(const Instance& instance, std::span<const Item> inner, std::span<const Item> outer,
                        std::span<const TestIndex> testset, const PairScanLimits& limits = {});

// Phase thresholds for an SGA run against an optimum of size m*.
// thresholds[t] = #_t for t in [0, I+1]; budgets[t] = k_t for t in [2, I+1].
struct PhaseSchedule {
  std::size_t n = 0;
  std::size_t m_star = 0;
  int I = 1;
  bool I_clamped = false;  // the defining ratio (n-1)/(4 log2 n) was <= 1
  std::vector<double> thresholds;
  std::vector<double> budgets;

  int top() const { return I + 1; }
  // Phase t holds while measure >= #_{t-1}; 0 once the measure is zero.
  int phase_of(PairCount measure) const;
};

PhaseSchedule phase_schedule(std::size_t n, std::size_t m_star);

struct PhaseStep {
  std::size_t step = 0;  // 1-based
  int phase = 0;
  // f after the step; absent in phase 1 and where 1 - t/m* <= 0.
  std::optional<double> potential;
};

struct PhaseSummary {
  int t = 0;
  std::size_t count = 0;
  bool blank = true;
  std::optional<double> budget;       // k_t
  std::optional<bool> within_budget;  // count < k_t + 1, non-blank t >= 2
  std::optional<double> potential_start;
  bool potential_monotone = true;
};

struct PhaseTrace {
  std::vector<PhaseStep> steps;
  std::vector<PhaseSummary> phases;  // t = I+1 down to 1

  bool budgets_hold() const;
  bool potentials_monotone() const;
};

// Throws std::invalid_argument when result and schedule disagree on n.
PhaseTrace trace_phases(const SolveResult& result, const PhaseSchedule& schedule);

struct ClaimStep {
  std::size_t step = 0;  // 1-based
  TestIndex test = 0;
  PairCount gain = 0;
  bool gain_matches = true;  // recorded gain equals the replayed one
  bool claim1 = true;        // >= every later unselected adversarial test
  bool claim2 = true;        // >= every planted test
  std::optional<bool> claim3;
};

struct ClaimsReport {
  std::vector<ClaimStep> steps;
  bool claim1 = true;
  bool claim2 = true;
  // Only level instances carry the begin/end measures.
  std::optional<bool> claim3;
  std::optional<std::size_t> first_violation;

  bool all() const { return claim1 && claim2 && claim3.value_or(true); }
};

ClaimsReport check_claims(const SolveResult& result, const LabeledInstance& labeled);

double phi(double x);

struct BoundReport {
  double phi_max = 0.0;  // phi(e^2)
  std::optional<double> sga_coefficient;  // 1 + phi(ln n / ln m*)
  std::optional<double> sga_upper;        // coefficient * m* ln n
  std::optional<double> ich_coefficient;  // ln n + 1
  std::optional<double> harmonic_J;
  std::optional<double> lower_coefficient;  // 1 + (H_J / (8 ln 2) - 1) / (J + 1)
};

BoundReport bounds(std::optional<std::size_t> n, std::optional<std::size_t> m_star, std::optional<int> J);

struct RatioReport {
  std::size_t size = 0;
  std::size_t m_star = 0;
  double ratio = 0.0;
  double ln_n = 0.0;
  bool within_sga_bound = false;  // ratio <= 1.1354 ln n
  bool within_ich_bound = false;  // ratio <= ln n + 1
  bool within_two_ln_n = false;
};

RatioReport ratio_report(const SolveResult& result, std::size_t m_star);

}  // namespace testset
