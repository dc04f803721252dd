#include "testset/core.hpp"

#include <stdexcept>
#include <string>

#include "testset/errors.hpp"

namespace testset {

bool differentiates(const Bitset& test, Item i, Item j) {
  if (i == j) throw std::invalid_argument("differentiates: i and j must differ");
  if (i >= test.size() || j >= test.size())
    throw std::invalid_argument("differentiates: item index out of range");
  return test.test(i) != test.test(j);
}

DiffState state_after(const Instance& instance, std::span<const TestIndex> selected) {
  DiffState state(instance);
  for (TestIndex k : selected) state.refine(k);
  return state;
}

PairCount diff_measure(const Instance& instance, std::span<const TestIndex> selected) {
  return state_after(instance, selected).measure();
}

bool is_test_set(const Instance& instance, std::span<const TestIndex> selected) {
  return diff_measure(instance, selected) == 0;
}

std::optional<std::pair<Item, Item>> find_undifferentiable_pair(const Instance& instance) {
  DiffState state(instance);
  for (TestIndex k = 0; k < instance.test_count(); ++k) state.refine(k);
  if (state.measure() == 0) return std::nullopt;
  return state.some_undifferentiated_pair();
}

void require_feasible(const Instance& instance) {
  if (auto pair = find_undifferentiable_pair(instance)) {
    throw InfeasibleError("instance is infeasible: no test differentiates items " +
                              std::to_string(pair->first) + " and " + std::to_string(pair->second),
                          pair->first, pair->second);
  }
}

std::size_t pair_diff_count(const Instance& instance, std::span<const TestIndex> selected,
                            Item i, Item j) {
  if (i == j) throw std::invalid_argument("pair_diff_count: i and j must differ");
  instance.check_item(i);
  instance.check_item(j);
  std::size_t count = 0;
  for (TestIndex k : selected) {
    instance.check_test_index(k);
    if (instance.test(k).test(i) != instance.test(k).test(j)) ++count;
  }
  return count;
}

std::vector<TestIndex> minimalize(const Instance& instance, std::span<const TestIndex> testset) {
  if (!is_test_set(instance, testset))
    throw ContractViolation("minimalize: input is not a test set");
  std::vector<bool> keep(testset.size(), true);
  std::vector<TestIndex> trial;
  for (std::size_t pos = testset.size(); pos-- > 0;) {
    trial.clear();
    for (std::size_t r = 0; r < testset.size(); ++r)
      if (keep[r] && r != pos) trial.push_back(testset[r]);
    if (is_test_set(instance, trial)) keep[pos] = false;
  }
  std::vector<TestIndex> out;
  for (std::size_t r = 0; r < testset.size(); ++r)
    if (keep[r]) out.push_back(testset[r]);
  return out;
}

}  // namespace testset
