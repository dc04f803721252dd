#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "testset/bitset.hpp"

namespace testset {

using Item = std::uint32_t;
using TestIndex = std::size_t;
// Number of item pairs. 64 bits: n around 2^20 already overflows 32.
using PairCount = std::uint64_t;

inline constexpr PairCount pairs_of(std::uint64_t size) {
  return size < 2 ? 0 : size * (size - 1) / 2;
}

// A universe of n items, a partition of the items into groups (only pairs
// inside one group need to be differentiated), and an ordered list of tests.
// Test order is significant: it is the default tie-break order.
//
// Immutable after construction.
class Instance {
 public:
  // Single group holding every item.
  Instance(std::size_t n, std::vector<std::vector<Item>> tests);
  // Groups must be pairwise disjoint and cover [0, n). Items inside each group
  // are stored sorted; group order is preserved.
  Instance(std::size_t n, std::vector<std::vector<Item>> groups,
           std::vector<std::vector<Item>> tests);

  std::size_t item_count() const { return n_; }
  std::size_t test_count() const { return members_.size(); }
  std::size_t group_count() const { return groups_.size(); }

  const std::vector<std::vector<Item>>& groups() const { return groups_; }
  std::uint32_t group_of(Item item) const { return group_of_[item]; }
  std::size_t max_group_size() const;
  // True when the instance uses the default single group.
  bool single_group() const { return groups_.size() <= 1; }

  const Bitset& test(TestIndex k) const { return bits_[k]; }
  // Sorted members of test k.
  std::span<const Item> members(TestIndex k) const { return members_[k]; }

  // Intra-group pairs, i.e. the measure of the empty selection.
  PairCount total_pairs() const;

  const std::vector<std::string>& test_names() const { return test_names_; }
  const std::vector<std::string>& item_names() const { return item_names_; }
  // Empty vectors clear the names; otherwise sizes must match.
  void set_test_names(std::vector<std::string> names);
  void set_item_names(std::vector<std::string> names);

  void check_test_index(TestIndex k) const;
  void check_item(Item i) const;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  std::size_t n_;
  std::vector<std::vector<Item>> groups_;
  std::vector<std::uint32_t> group_of_;
  std::vector<std::vector<Item>> members_;
  std::vector<Bitset> bits_;
  std::vector<std::string> test_names_;
  std::vector<std::string> item_names_;
};

}  // namespace testset
