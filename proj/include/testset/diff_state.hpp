#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "testset/instance.hpp"

namespace testset {

// Partition of the items into classes of the relation "not differentiated by
// any selected test", refined one test at a time. Classes never cross group
// boundaries, so measure() counts only intra-group pairs.
//
// Gain evaluation walks the members of the candidate test once and sums
// |C ∩ T| * |C \ T| over the touched classes; no pair is ever rescanned.
//
// Single owner: gain() uses internal scratch buffers and is not safe to call
// concurrently on one object.
class DiffState {
 public:
  using ClassId = std::uint32_t;

  explicit DiffState(const Instance& instance);

  const Instance& instance() const { return *instance_; }
  const std::vector<TestIndex>& selected() const { return selected_; }
  PairCount measure() const { return measure_; }
  std::size_t class_count() const { return class_size_.size(); }
  ClassId class_of(Item i) const { return class_of_[i]; }
  std::size_t class_size(ClassId c) const { return class_size_[c]; }
  bool is_selected(TestIndex k) const { return chosen_[k]; }

  // Pairs that selecting test k would newly differentiate.
  PairCount gain(TestIndex k) const;
  // Change of sum_C |C| log2 |C| caused by selecting test k (<= 0).
  double entropy_delta(TestIndex k) const;
  double entropy() const;

  // Splits every class along test k and appends k to the selection. Returns
  // the gain realized. Selecting an already-selected test is a no-op split
  // (gain 0) and is still recorded.
  PairCount refine(TestIndex k);
  DiffState refined(TestIndex k) const;

  // Classes as sorted item lists, ordered by their smallest item.
  std::vector<std::vector<Item>> classes() const;
  // Any two items in one class of size >= 2; {0,0} when measure() == 0.
  std::pair<Item, Item> some_undifferentiated_pair() const;

 private:
  template <typename Fn>
  void tally(TestIndex k, Fn&& per_class) const;

  const Instance* instance_;
  std::vector<TestIndex> selected_;
  std::vector<bool> chosen_;
  std::vector<ClassId> class_of_;
  std::vector<std::uint32_t> class_size_;
  PairCount measure_ = 0;

  mutable std::vector<std::uint32_t> hits_;
  mutable std::vector<ClassId> touched_;
};

}  // namespace testset
