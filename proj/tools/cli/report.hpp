#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formats.hpp"
#include "testset/analysis.hpp"
#include "testset/generators.hpp"
#include "testset/solvers.hpp"

namespace testset::cli {

// Everything needed to rerun a command; no timestamps or host data.
Json manifest(const std::string& command, const Json& parameters, std::optional<std::uint64_t> seed,
              std::optional<std::string> tie_break);

Json size_json(const SizePrediction& s);
Json instance_summary(const Instance& instance);

// sga | ich | exact | sc-greedy. nullopt only when exact runs out of budget.
std::optional<SolveResult> solve_with(const Instance& instance, const std::string& alg, const TieBreak& tb,
                                      std::optional<std::size_t> budget = std::nullopt);

Json result_json(const SolveResult& result, const LabeledInstance& li);

// Formula values next to the measured run: Lemma-1 style upper bound when m*
// is known, label tallies, and closed-form sizes for generated families.
Json reference_json(const LabeledInstance& li, const SolveResult& result, std::optional<std::size_t> m_star);

// |T'_0| + sum_t q M* / (8 t) for complete instances.
std::optional<std::uint64_t> complete_formula_size(const LabeledInstance& li);

// m*: explicit value, then a proven planted optimum, then the exact solver.
std::optional<std::size_t> known_m_star(const LabeledInstance& li, std::optional<std::size_t> flag, bool use_exact);

// Columns: step,test_id,gain,measure_before,measure_after,phase[,potential].
std::string steps_csv(const SolveResult& result, const std::optional<PhaseSchedule>& schedule, bool potential);
// Columns: phase,count,budget,within_budget,blank,potential_start,potential_monotone.
std::string phases_csv(const PhaseTrace& trace);

std::string format_double(double x);
std::string csv_escape(const std::string& s);

struct SolveOptions {
  std::string alg = "sga";
  std::string tie_break = "natural";
  std::vector<std::size_t> priority;
};

struct AnalyzeOptions {
  std::string input;
  std::string out;
  std::vector<std::size_t> tests;
  bool use_exact = false;
  bool force = false;
  std::optional<std::size_t> m_star;
  std::optional<std::size_t> n;
  std::optional<int> J;
  SolveOptions solve;
};

int analyze_distribution(const AnalyzeOptions& o, std::ostream& out);
int analyze_lemmas(const AnalyzeOptions& o, std::ostream& out);
int analyze_claims(const AnalyzeOptions& o, std::ostream& out);
int analyze_ratio(const AnalyzeOptions& o, std::ostream& out);
int analyze_bounds(const AnalyzeOptions& o, std::ostream& out);

}  // namespace testset::cli
