#include <algorithm>
#include <bit>
#include <limits>

#include "testset/core.hpp"
#include "testset/diff_state.hpp"
#include "testset/solvers.hpp"

namespace testset {

namespace {

std::size_t ceil_log2(std::size_t x) {
  return x <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(x - 1));
}

// Depth-bounded search branching on the tests that can separate one chosen
// undifferentiated pair. Candidates tried earlier are banned in later
// siblings, so every subset is visited at most once.
class ExactSearch {
 public:
  explicit ExactSearch(const Instance& instance)
      : instance_(instance), banned_(instance.test_count(), false) {}

  bool run(const DiffState& state, std::size_t remaining) { return dfs(state, remaining); }
  const std::vector<TestIndex>& path() const { return path_; }

 private:
  bool dfs(const DiffState& state, std::size_t remaining) {
    if (state.measure() == 0) return true;
    if (remaining == 0) return false;

    std::size_t largest = 0;
    for (std::size_t c = 0; c < state.class_count(); ++c) largest = std::max(largest, state.class_size(c));
    if (ceil_log2(largest) > remaining) return false;

    const std::size_t m = instance_.test_count();
    std::vector<PairCount> gains(m, 0);
    PairCount max_gain = 0;
    for (TestIndex k = 0; k < m; ++k) {
      if (banned_[k] || state.is_selected(k)) continue;
      gains[k] = state.gain(k);
      max_gain = std::max(max_gain, gains[k]);
    }
    if (max_gain == 0) return false;
    // Every remaining slot removes at most max_gain pairs.
    if (max_gain * remaining < state.measure()) return false;

    const auto candidates = branching_tests(state, gains);
    if (candidates.empty()) return false;

    bool found = false;
    std::size_t tried = 0;
    for (TestIndex k : candidates) {
      path_.push_back(k);
      if (dfs(state.refined(k), remaining - 1)) {
        found = true;
        break;
      }
      path_.pop_back();
      banned_[k] = true;
      ++tried;
    }
    for (std::size_t r = 0; r < tried; ++r) banned_[candidates[r]] = false;
    return found;
  }

  // Tests able to separate the undifferentiated pair with the fewest such
  // tests, most useful first.
  std::vector<TestIndex> branching_tests(const DiffState& state, const std::vector<PairCount>& gains) {
    const auto classes = state.classes();
    std::vector<TestIndex> best;
    bool have = false;
    for (const auto& cls : classes) {
      if (cls.size() < 2) continue;
      const Item anchor = cls.front();
      for (std::size_t r = 1; r < cls.size(); ++r) {
        const Item other = cls[r];
        std::vector<TestIndex> cands;
        for (TestIndex k = 0; k < instance_.test_count(); ++k) {
          if (gains[k] == 0) continue;
          const Bitset& t = instance_.test(k);
          if (t.test(anchor) != t.test(other)) cands.push_back(k);
        }
        if (!have || cands.size() < best.size()) {
          best = std::move(cands);
          have = true;
          if (best.size() <= 1) break;
        }
      }
      if (have && best.size() <= 1) break;
    }
    std::stable_sort(best.begin(), best.end(),
                     [&](TestIndex a, TestIndex b) { return gains[a] > gains[b]; });
    return best;
  }

  const Instance& instance_;
  std::vector<bool> banned_;
  std::vector<TestIndex> path_;
};

}  // namespace

std::optional<SolveResult> exact(const Instance& instance, const ExactOptions& options) {
  require_feasible(instance);
  const std::size_t n = instance.item_count();
  const std::size_t budget = options.budget.value_or(n > 0 ? n - 1 : 0);

  DiffState root(instance);
  std::vector<TestIndex> chosen;
  bool found = root.measure() == 0;
  for (std::size_t k = std::max<std::size_t>(ceil_log2(instance.max_group_size()), 1);
       !found && k <= budget; ++k) {
    ExactSearch search(instance);
    if (search.run(root, k)) {
      chosen = search.path();
      found = true;
    }
  }
  if (!found) return std::nullopt;

  SolveResult result;
  result.algorithm = "exact";
  result.universe_size = n;
  DiffState state(instance);
  for (TestIndex k : chosen) {
    StepRecord step;
    step.test = k;
    step.measure_before = state.measure();
    step.gain = state.refine(k);
    step.measure_after = state.measure();
    result.selected.push_back(k);
    result.steps.push_back(step);
  }
  result.final_measure = state.measure();
  return result;
}

}  // namespace testset
