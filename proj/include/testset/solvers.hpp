#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "testset/instance.hpp"

namespace testset {

// Deterministic total order used to break gain ties; lower rank wins.
// LowestIndex and NaturalOrder both follow instance test order (generators emit
// tests in natural order); Priority ranks the listed indices first, in list
// order, then everything else by index.
class TieBreak {
 public:
  enum class Policy { LowestIndex, NaturalOrder, Priority };

  static TieBreak lowest_index() { return TieBreak(Policy::LowestIndex, {}); }
  static TieBreak natural_order() { return TieBreak(Policy::NaturalOrder, {}); }
  static TieBreak priority(std::vector<std::size_t> order) {
    return TieBreak(Policy::Priority, std::move(order));
  }

  Policy policy() const { return policy_; }
  const std::vector<std::size_t>& priority_list() const { return priority_; }
  std::string name() const;
  static TieBreak parse(const std::string& policy, const std::vector<std::size_t>& priority = {});

  // Rank per candidate index for a universe of `count` candidates.
  std::vector<std::size_t> ranks(std::size_t count) const;

 private:
  TieBreak(Policy p, std::vector<std::size_t> priority) : policy_(p), priority_(std::move(priority)) {}
  Policy policy_;
  std::vector<std::size_t> priority_;
};

struct StepRecord {
  std::size_t test = 0;
  std::uint64_t gain = 0;
  std::uint64_t measure_before = 0;
  std::uint64_t measure_after = 0;
  // Candidates sharing the winning score at this step (>= 1).
  std::size_t tied = 1;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct SolveResult {
  std::string algorithm;
  // Items for test set solvers, elements for set cover.
  std::size_t universe_size = 0;
  std::vector<std::size_t> selected;
  std::vector<StepRecord> steps;
  std::uint64_t final_measure = 0;

  std::size_t size() const { return selected.size(); }
  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

// Setcover greedy algorithm: repeatedly take the test that differentiates the
// most still-undifferentiated pairs. Throws InfeasibleError up front when the
// full test list is not a test set.
SolveResult sga(const Instance& instance, const TieBreak& tie_break = TieBreak::natural_order());

// Information content heuristic: repeatedly take the test minimizing
// sum_C |C| log2 |C| over the refined classes.
SolveResult ich(const Instance& instance, const TieBreak& tie_break = TieBreak::natural_order());

struct ExactOptions {
  // Largest cardinality to try; defaults to n - 1, enough for any feasible
  // instance since a minimal test set never exceeds that.
  std::optional<std::size_t> budget;
};

// Minimum-cardinality test set by iterative deepening on the cardinality.
// Returns nullopt when no test set fits within the budget.
std::optional<SolveResult> exact(const Instance& instance, const ExactOptions& options = {});

struct SetCoverInstance {
  std::size_t element_count = 0;
  std::vector<std::vector<std::uint32_t>> subsets;
  std::vector<std::size_t> planted_optimal;
  std::vector<std::size_t> adversarial;
};

struct TransformOptions {
  // Refuse to materialize more elements than this (C(512, 2) by default).
  std::uint64_t max_elements = pairs_of(512);
};

// Elements are the intra-group item pairs, enumerated group by group and
// lexicographically inside a group; subset k holds the pairs test k
// differentiates. Throws SizeCapError past the limit.
SetCoverInstance transform(const Instance& instance, const TransformOptions& options = {});

// Element id of the intra-group pair {i, j} under transform()'s numbering.
std::uint64_t pair_element(const Instance& instance, Item i, Item j);

// Classic greedy set cover. Throws InfeasibleError naming an element that no
// subset covers.
SolveResult greedy_setcover(const SetCoverInstance& sc,
                            const TieBreak& tie_break = TieBreak::lowest_index());

// True iff sga and greedy_setcover(transform(.)) pick identical sequences.
bool verify_isomorphism(const Instance& instance, const TieBreak& tie_break = TieBreak::natural_order(),
                        const TransformOptions& options = {});

}  // namespace testset
