#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "testset/instance.hpp"
#include "testset/solvers.hpp"

namespace testset {

// Structured name of a generated test. Coordinates are 1-based for display;
// absent fields do not apply to the family.
struct TestLabel {
  std::string family;  // "T'" (adversarial), "T*" (planted optimal), "compact"
  std::optional<int> level;
  std::optional<int> axis;   // i: coordinate x_i the test looks at
  std::optional<int> block;  // j: group block (or value of x_i for T*)
  std::optional<int> bit;    // k: compact test index
  std::optional<int> clone;  // l: clone along the z dimension
  // Tests folded into this one by the Merging step of complete instances.
  std::vector<TestLabel> merged;

  friend bool operator==(const TestLabel&, const TestLabel&) = default;
};

struct LabeledInstance {
  Instance instance;
  std::string generator;
  std::map<std::string, std::int64_t> params;
  std::vector<std::size_t> planted_optimal;
  // Adversarial family, in natural order.
  std::vector<std::size_t> adversarial;
  // One per test, or empty.
  std::vector<TestLabel> labels;
  // planted_optimal is a proven minimum test set.
  bool optimal_known = false;

  explicit LabeledInstance(Instance inst) : instance(std::move(inst)) {}
  friend bool operator==(const LabeledInstance&, const LabeledInstance&) = default;
};

struct GeneratorLimits {
  std::uint64_t max_items = std::uint64_t{1} << 22;
};

struct SizePrediction {
  std::uint64_t items = 0;
  std::uint64_t groups = 0;
  std::uint64_t tests = 0;
};

struct AtomParams {
  int q = 3;
  int t = 2;
};

struct LevelParams {
  int q = 2;
  int J = 2;
  int t = 2;
};

struct CompleteParams {
  int q = 3;
  int J = 2;
};

SizePrediction predict_atom(const AtomParams& p);
SizePrediction predict_level(const LevelParams& p);
SizePrediction predict_complete(const CompleteParams& p);

// Items [0, 2^q); test k holds the items whose bit k is set.
LabeledInstance compact(int q);

// Items are linearized group-major: item = y * 2^(q t) + sum_i x_i 2^(q (t-i)),
// with 0-based coordinates. Tests: T' in natural (i, j, k) order, then T* in
// (i, j) order.
LabeledInstance atom(const AtomParams& p, const GeneratorLimits& limits = {});

// Groups are indexed (y, z, w) row-major, each holding 2^(q t) points laid out
// as in atom(). Tests: T' in natural (i, j, k, l) order, then T* in (i, j, l).
LabeledInstance level(const LevelParams& p, const GeneratorLimits& limits = {});

// Equal-share depletion family: M* disjoint blocks of N / M* elements (the
// planted optimum) and adversarial subsets, listed first, that each take as
// many elements as the fullest block still holds, drawn one at a time from
// the fullest blocks. Greedy with lowest-index ties picks exactly the
// adversarial subsets. Verified on construction, including a packing of M*
// elements that no subset covers twice, which certifies the blocks optimal.
SetCoverInstance sc_adversarial(std::uint64_t N, std::uint64_t m_star);

// The set cover instance above written as a test set instance: item pairs
// {2p, 2p+1} form the groups and subset c becomes the test {2p : p in c}.
LabeledInstance sc_adversarial_instance(std::uint64_t N, std::uint64_t m_star);

// Complete instance: S_0 (the set cover gadget, 2N items) followed by the
// level-t universes S_1..S_J of N items each, with Enlargement and Merging
// applied to T'. Requires q >= 3: Enlargement pairs y-blocks (2j-1, 2j), and
// q = 2 leaves a single y-block.
// Tests: T'_{J,1}, ..., T'_{1,1} (natural order), then T'_0 (greedy order),
// then the M* planted tests T*_{0,m} u ... u T*_{J,m}.
LabeledInstance complete(const CompleteParams& p, const GeneratorLimits& limits = {});

struct RandomInstance {
  Instance instance;
  bool feasible = false;
};

// m tests, each item included independently with probability `density`.
// Deterministic in `seed`.
RandomInstance random_instance(std::size_t n, std::size_t m, double density, std::uint64_t seed);

// First feasible draw among seeds derived from `seed`; throws
// InfeasibleError after `attempts` infeasible draws.
Instance random_feasible(std::size_t n, std::size_t m, double density, std::uint64_t seed,
                         int attempts = 1000);

// Harmonic number H_k.
double harmonic(int k);
std::uint64_t factorial(int k);

// Level-t reference measures. The summed forms are the values over all J!/t
// clones of the level instance; a single T'_{t,1} test covers one clone, so
// its gain is the summed value times t / J!. The two coincide when J! = t.
struct LevelMeasures {
  std::uint64_t N = 0;
  std::uint64_t M_star = 0;
  std::uint64_t begin_total = 0;   // 2^(q(t-1)) N
  std::uint64_t end_total = 0;     // 2 * 2^(q(t-2)) N
  std::uint64_t begin_per_test = 0;
  std::uint64_t end_per_test = 0;
  std::uint64_t optimal_initial_per_test = 0;  // T* gain before any selection
};
LevelMeasures level_measures(const LevelParams& p);

}  // namespace testset
