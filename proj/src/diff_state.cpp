#include "testset/diff_state.hpp"

#include <algorithm>
#include <cmath>

namespace testset {

namespace {

double xlog2x(double x) { return x <= 1.0 ? 0.0 : x * std::log2(x); }

}  // namespace

DiffState::DiffState(const Instance& instance)
    : instance_(&instance), chosen_(instance.test_count(), false) {
  class_of_.resize(instance.item_count());
  class_size_.reserve(instance.group_count());
  for (std::size_t g = 0; g < instance.group_count(); ++g) {
    const auto& group = instance.groups()[g];
    for (Item i : group) class_of_[i] = static_cast<ClassId>(g);
    class_size_.push_back(static_cast<std::uint32_t>(group.size()));
    measure_ += pairs_of(group.size());
  }
  hits_.assign(class_size_.size(), 0);
}

template <typename Fn>
void DiffState::tally(TestIndex k, Fn&& per_class) const {
  instance_->check_test_index(k);
  if (hits_.size() < class_size_.size()) hits_.resize(class_size_.size(), 0);
  for (Item i : instance_->members(k)) {
    const ClassId c = class_of_[i];
    if (hits_[c]++ == 0) touched_.push_back(c);
  }
  for (ClassId c : touched_) {
    per_class(c, hits_[c], class_size_[c]);
    hits_[c] = 0;
  }
  touched_.clear();
}

PairCount DiffState::gain(TestIndex k) const {
  PairCount g = 0;
  tally(k, [&](ClassId, std::uint64_t inside, std::uint64_t size) {
    g += inside * (size - inside);
  });
  return g;
}

double DiffState::entropy_delta(TestIndex k) const {
  double delta = 0.0;
  tally(k, [&](ClassId, std::uint32_t inside, std::uint32_t size) {
    if (inside == size) return;
    delta += xlog2x(inside) + xlog2x(size - inside) - xlog2x(size);
  });
  return delta;
}

double DiffState::entropy() const {
  double e = 0.0;
  for (std::uint32_t s : class_size_) e += xlog2x(s);
  return e;
}

PairCount DiffState::refine(TestIndex k) {
  instance_->check_test_index(k);
  // New class ids for the part of each split class that lies inside the test.
  std::vector<std::pair<ClassId, ClassId>> remap;
  PairCount g = 0;
  tally(k, [&](ClassId c, std::uint64_t inside, std::uint64_t size) {
    if (inside == size) return;
    g += inside * (size - inside);
    remap.emplace_back(c, static_cast<ClassId>(class_size_.size() + remap.size()));
  });
  if (!remap.empty()) {
    std::sort(remap.begin(), remap.end());
    const std::size_t old_count = class_size_.size();
    class_size_.resize(old_count + remap.size(), 0);
    for (Item i : instance_->members(k)) {
      const ClassId c = class_of_[i];
      if (c >= old_count) continue;
      auto it = std::lower_bound(remap.begin(), remap.end(), std::make_pair(c, ClassId{0}));
      if (it == remap.end() || it->first != c) continue;
      class_of_[i] = it->second;
      --class_size_[c];
      ++class_size_[it->second];
    }
  }
  measure_ -= g;
  selected_.push_back(k);
  chosen_[k] = true;
  return g;
}

DiffState DiffState::refined(TestIndex k) const {
  DiffState copy = *this;
  copy.refine(k);
  return copy;
}

std::vector<std::vector<Item>> DiffState::classes() const {
  std::vector<std::vector<Item>> by_id(class_size_.size());
  for (std::size_t i = 0; i < class_of_.size(); ++i)
    by_id[class_of_[i]].push_back(static_cast<Item>(i));
  std::vector<std::vector<Item>> out;
  out.reserve(by_id.size());
  for (auto& c : by_id)
    if (!c.empty()) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::pair<Item, Item> DiffState::some_undifferentiated_pair() const {
  std::vector<std::int64_t> first(class_size_.size(), -1);
  for (std::size_t i = 0; i < class_of_.size(); ++i) {
    const ClassId c = class_of_[i];
    if (class_size_[c] < 2) continue;
    if (first[c] < 0) {
      first[c] = static_cast<std::int64_t>(i);
    } else {
      return {static_cast<Item>(first[c]), static_cast<Item>(i)};
    }
  }
  return {0, 0};
}

}  // namespace testset
