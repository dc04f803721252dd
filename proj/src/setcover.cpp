#include <algorithm>
#include <stdexcept>
#include <string>

#include "testset/core.hpp"
#include "testset/errors.hpp"
#include "testset/solvers.hpp"

namespace testset {

namespace {

std::uint64_t pair_index(std::uint64_t size, std::uint64_t a, std::uint64_t b) {
  // Lexicographic index of (a, b), a < b, among pairs of [0, size).
  return a * size - a * (a + 1) / 2 + (b - a - 1);
}

}  // namespace

std::uint64_t pair_element(const Instance& instance, Item i, Item j) {
  instance.check_item(i);
  instance.check_item(j);
  if (i == j) throw std::invalid_argument("pair_element: i and j must differ");
  const auto g = instance.group_of(i);
  if (instance.group_of(j) != g)
    throw std::invalid_argument("pair_element: items lie in different groups");
  std::uint64_t offset = 0;
  for (std::uint32_t h = 0; h < g; ++h) offset += pairs_of(instance.groups()[h].size());
  const auto& group = instance.groups()[g];
  auto pos = [&](Item x) {
    return static_cast<std::uint64_t>(std::lower_bound(group.begin(), group.end(), x) - group.begin());
  };
  std::uint64_t a = pos(i), b = pos(j);
  if (a > b) std::swap(a, b);
  return offset + pair_index(group.size(), a, b);
}

SetCoverInstance transform(const Instance& instance, const TransformOptions& options) {
  const PairCount total = instance.total_pairs();
  if (total > options.max_elements)
    throw SizeCapError("transform: " + std::to_string(total) +
                           " item pairs exceed the materialization limit of " +
                           std::to_string(options.max_elements),
                       total, options.max_elements);
  if (total > 0xffffffffULL)
    throw SizeCapError("transform: element ids must fit in 32 bits", total, 0xffffffffULL);
  SetCoverInstance sc;
  sc.element_count = static_cast<std::size_t>(total);
  sc.subsets.resize(instance.test_count());
  for (TestIndex k = 0; k < instance.test_count(); ++k) {
    const Bitset& test = instance.test(k);
    auto& subset = sc.subsets[k];
    std::uint64_t offset = 0;
    for (const auto& group : instance.groups()) {
      const std::uint64_t s = group.size();
      for (std::uint64_t a = 0; a < s; ++a) {
        const bool in_a = test.test(group[a]);
        for (std::uint64_t b = a + 1; b < s; ++b)
          if (in_a != test.test(group[b]))
            subset.push_back(static_cast<std::uint32_t>(offset + pair_index(s, a, b)));
      }
      offset += pairs_of(s);
    }
  }
  return sc;
}

SolveResult greedy_setcover(const SetCoverInstance& sc, const TieBreak& tie_break) {
  const std::size_t m = sc.subsets.size();
  std::vector<char> covered(sc.element_count, 0);
  for (const auto& s : sc.subsets)
    for (auto e : s) {
      if (e >= sc.element_count)
        throw std::invalid_argument("greedy_setcover: element " + std::to_string(e) + " out of range");
      covered[e] = 1;
    }
  for (std::size_t e = 0; e < sc.element_count; ++e)
    if (!covered[e])
      throw InfeasibleError("set cover is infeasible: no subset covers element " + std::to_string(e), e, 0);
  std::fill(covered.begin(), covered.end(), 0);

  const auto rank = tie_break.ranks(m);
  SolveResult result;
  result.algorithm = "sc-greedy";
  result.universe_size = sc.element_count;
  std::vector<bool> used(m, false);
  std::vector<bool> exhausted(m, false);
  std::uint64_t uncovered = sc.element_count;
  while (uncovered > 0) {
    std::size_t best = m;
    std::uint64_t best_gain = 0;
    std::size_t tied = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (used[k] || exhausted[k]) continue;
      std::uint64_t g = 0;
      for (auto e : sc.subsets[k]) g += covered[e] == 0;
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
    if (best == m) throw std::logic_error("greedy_setcover: no progress on a feasible instance");
    for (auto e : sc.subsets[best]) covered[e] = 1;
    used[best] = true;
    StepRecord step{best, best_gain, uncovered, uncovered - best_gain, tied};
    uncovered -= best_gain;
    result.selected.push_back(best);
    result.steps.push_back(step);
  }
  result.final_measure = 0;
  return result;
}

bool verify_isomorphism(const Instance& instance, const TieBreak& tie_break,
                        const TransformOptions& options) {
  const SetCoverInstance sc = transform(instance, options);
  return sga(instance, tie_break).selected == greedy_setcover(sc, tie_break).selected;
}

}  // namespace testset
