#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "testset/bitset.hpp"
#include "testset/diff_state.hpp"
#include "testset/instance.hpp"

namespace testset {

// True iff exactly one of i, j lies in the test. Throws std::invalid_argument
// when i == j or either index is outside the test's universe.
bool differentiates(const Bitset& test, Item i, Item j);

// Intra-group pairs left undifferentiated by the selected tests.
PairCount diff_measure(const Instance& instance, std::span<const TestIndex> selected);

DiffState state_after(const Instance& instance, std::span<const TestIndex> selected);

inline PairCount gain(const DiffState& state, TestIndex k) { return state.gain(k); }

bool is_test_set(const Instance& instance, std::span<const TestIndex> selected);

// An intra-group pair that the whole test list cannot separate, if any.
std::optional<std::pair<Item, Item>> find_undifferentiable_pair(const Instance& instance);

// Throws InfeasibleError naming an undifferentiable pair.
void require_feasible(const Instance& instance);

// Number of selected tests that differentiate {i, j}.
std::size_t pair_diff_count(const Instance& instance, std::span<const TestIndex> selected,
                            Item i, Item j);

// Drops redundant tests, trying them in reverse selection order, until the
// remaining set is a minimal test set. Relative order of survivors is kept.
// Throws ContractViolation when the input is not a test set.
std::vector<TestIndex> minimalize(const Instance& instance, std::span<const TestIndex> testset);

}  // namespace testset
