#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "testset/core.hpp"
#include "testset/diff_state.hpp"
#include "testset/errors.hpp"
#include "testset/solvers.hpp"

namespace testset {

std::string TieBreak::name() const {
  switch (policy_) {
    case Policy::LowestIndex:
      return "lowest-index";
    case Policy::NaturalOrder:
      return "natural";
    case Policy::Priority:
      return "priority";
  }
  return "natural";
}

TieBreak TieBreak::parse(const std::string& policy, const std::vector<std::size_t>& priority) {
  if (policy == "lowest-index") return lowest_index();
  if (policy == "natural" || policy == "natural-order") return natural_order();
  if (policy == "priority") return TieBreak::priority(priority);
  throw std::invalid_argument("unknown tie-break policy '" + policy +
                              "' (expected lowest-index, natural or priority)");
}

std::vector<std::size_t> TieBreak::ranks(std::size_t count) const {
  std::vector<std::size_t> rank(count);
  if (policy_ != Policy::Priority) {
    for (std::size_t k = 0; k < count; ++k) rank[k] = k;
    return rank;
  }
  constexpr std::size_t kUnranked = std::numeric_limits<std::size_t>::max();
  std::fill(rank.begin(), rank.end(), kUnranked);
  std::size_t next = 0;
  for (std::size_t k : priority_) {
    if (k >= count) throw std::invalid_argument("tie-break priority index " + std::to_string(k) + " out of range");
    if (rank[k] != kUnranked) throw std::invalid_argument("tie-break priority lists index " + std::to_string(k) + " twice");
    rank[k] = next++;
  }
  for (std::size_t k = 0; k < count; ++k)
    if (rank[k] == kUnranked) rank[k] = next++;
  return rank;
}

SolveResult sga(const Instance& instance, const TieBreak& tie_break) {
  require_feasible(instance);
  const std::size_t m = instance.test_count();
  const auto rank = tie_break.ranks(m);
  SolveResult result;
  result.algorithm = "sga";
  result.universe_size = instance.item_count();

  DiffState state(instance);
  // Gains never grow as the partition refines, so a test that has dropped to
  // zero can be skipped for the rest of the run.
  std::vector<bool> exhausted(m, false);
  while (state.measure() > 0) {
    std::size_t best = m;
    PairCount best_gain = 0;
    std::size_t tied = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (exhausted[k] || state.is_selected(k)) continue;
      const PairCount g = state.gain(k);
      if (g == 0) {
        exhausted[k] = true;
        continue;
      }
      if (g > best_gain) {
        best = k;
        best_gain = g;
        tied = 1;
      } else if (g == best_gain) {
        ++tied;
        if (rank[k] < rank[best]) best = k;
      }
    }
    if (best == m) throw std::logic_error("sga: no progress on a feasible instance");
    StepRecord step;
    step.test = best;
    step.measure_before = state.measure();
    step.gain = state.refine(best);
    step.measure_after = state.measure();
    step.tied = tied;
    result.selected.push_back(best);
    result.steps.push_back(step);
  }
  result.final_measure = state.measure();
  return result;
}

SolveResult ich(const Instance& instance, const TieBreak& tie_break) {
  require_feasible(instance);
  const std::size_t m = instance.test_count();
  const auto rank = tie_break.ranks(m);
  SolveResult result;
  result.algorithm = "ich";
  result.universe_size = instance.item_count();

  DiffState state(instance);
  std::vector<bool> exhausted(m, false);
  while (state.measure() > 0) {
    std::size_t best = m;
    double best_delta = 0.0;
    std::size_t tied = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (exhausted[k] || state.is_selected(k)) continue;
      if (state.gain(k) == 0) {
        exhausted[k] = true;
        continue;
      }
      const double d = state.entropy_delta(k);
      if (best == m) {
        best = k;
        best_delta = d;
        tied = 1;
        continue;
      }
      const double tol = 1e-9 * std::max({1.0, std::abs(d), std::abs(best_delta)});
      if (d < best_delta - tol) {
        best = k;
        best_delta = d;
        tied = 1;
      } else if (std::abs(d - best_delta) <= tol) {
        ++tied;
        if (rank[k] < rank[best]) {
          best = k;
          best_delta = d;
        }
      }
    }
    if (best == m) throw std::logic_error("ich: no progress on a feasible instance");
    StepRecord step;
    step.test = best;
    step.measure_before = state.measure();
    step.gain = state.refine(best);
    step.measure_after = state.measure();
    step.tied = tied;
    result.selected.push_back(best);
    result.steps.push_back(step);
  }
  result.final_measure = state.measure();
  return result;
}

}  // namespace testset
