#include "testset/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace testset {

namespace {

std::vector<std::vector<Item>> one_group(std::size_t n) {
  std::vector<Item> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Item>(i);
  return {std::move(all)};
}

}  // namespace

Instance::Instance(std::size_t n, std::vector<std::vector<Item>> tests)
    : Instance(n, n == 0 ? std::vector<std::vector<Item>>{} : one_group(n),
               std::move(tests)) {}

Instance::Instance(std::size_t n, std::vector<std::vector<Item>> groups,
                   std::vector<std::vector<Item>> tests)
    : n_(n), groups_(std::move(groups)), members_(std::move(tests)) {
  if (n_ > std::size_t{0xffffffffU})
    throw std::invalid_argument("instance: item count does not fit 32-bit item ids");

  constexpr std::uint32_t kUnassigned = 0xffffffffU;
  group_of_.assign(n_, kUnassigned);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    auto& group = groups_[g];
    if (group.empty()) throw std::invalid_argument("instance: group " + std::to_string(g) + " is empty");
    std::sort(group.begin(), group.end());
    for (Item i : group) {
      if (i >= n_)
        throw std::invalid_argument("instance: group item " + std::to_string(i) + " out of range");
      if (group_of_[i] != kUnassigned)
        throw std::invalid_argument("instance: item " + std::to_string(i) +
                                    " appears in more than one group");
      group_of_[i] = static_cast<std::uint32_t>(g);
    }
  }
  for (std::size_t i = 0; i < n_; ++i)
    if (group_of_[i] == kUnassigned)
      throw std::invalid_argument("instance: item " + std::to_string(i) + " is in no group");

  bits_.reserve(members_.size());
  for (std::size_t k = 0; k < members_.size(); ++k) {
    auto& m = members_[k];
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    Bitset bits(n_);
    for (Item i : m) {
      if (i >= n_)
        throw std::invalid_argument("instance: test " + std::to_string(k) + " contains item " +
                                    std::to_string(i) + " outside [0," + std::to_string(n_) + ")");
      bits.set(i);
    }
    bits_.push_back(std::move(bits));
  }
}

std::size_t Instance::max_group_size() const {
  std::size_t best = 0;
  for (const auto& g : groups_) best = std::max(best, g.size());
  return best;
}

PairCount Instance::total_pairs() const {
  PairCount total = 0;
  for (const auto& g : groups_) total += pairs_of(g.size());
  return total;
}

void Instance::set_test_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != members_.size())
    throw std::invalid_argument("instance: test name count does not match test count");
  test_names_ = std::move(names);
}

void Instance::set_item_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != n_)
    throw std::invalid_argument("instance: item name count does not match item count");
  item_names_ = std::move(names);
}

void Instance::check_test_index(TestIndex k) const {
  if (k >= members_.size())
    throw std::invalid_argument("test index " + std::to_string(k) + " out of range (have " +
                                std::to_string(members_.size()) + " tests)");
}

void Instance::check_item(Item i) const {
  if (i >= n_)
    throw std::invalid_argument("item " + std::to_string(i) + " out of range [0," +
                                std::to_string(n_) + ")");
}

bool operator==(const Instance& a, const Instance& b) {
  return a.n_ == b.n_ && a.groups_ == b.groups_ && a.members_ == b.members_ &&
         a.test_names_ == b.test_names_ && a.item_names_ == b.item_names_;
}

}  // namespace testset
