#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "testset/core.hpp"
#include "testset/errors.hpp"
#include "testset/generators.hpp"

using namespace testset;

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(Instance(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(4, {{0, 1}, {1, 2, 3}}, {}), std::invalid_argument);  // overlap
  CHECK_THROWS_AS(Instance(4, {{0, 1}, {2}}, {}), std::invalid_argument);        // 3 uncovered
  CHECK_THROWS_AS(Instance(2, {{0, 1}, {}}, {}), std::invalid_argument);         // empty group

  Instance inst(4, {{3, 2}, {1, 0}}, {{2, 0, 2}, {}});
  CHECK(inst.group_count() == 2);
  CHECK(inst.groups()[0] == std::vector<Item>{2, 3});
  CHECK(inst.members(0).size() == 2);  // duplicate dropped
  CHECK(inst.total_pairs() == 2);
  CHECK_FALSE(inst.single_group());

  Instance one(1, {});
  CHECK(one.total_pairs() == 0);
  CHECK(is_test_set(one, {}));
}

TEST_CASE("differentiates") {
  Bitset t(2);
  t.set(0);
  CHECK(differentiates(t, 0, 1));
  t.set(1);
  CHECK_FALSE(differentiates(t, 0, 1));
  CHECK_THROWS_AS(differentiates(t, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(differentiates(t, 0, 2), std::invalid_argument);

  // atom(3,2): the T* test for x_1 = 1 against two points differing in x_1 only.
  const auto a = atom({3, 2});
  const TestIndex star = a.adversarial.size();  // T*(i=1, j=1)
  CHECK(a.labels[star].family == "T*");
  CHECK(a.labels[star].axis == 1);
  CHECK(a.labels[star].block == 1);
  // item = y * 64 + x1 * 8 + x2 with 0-based coordinates
  CHECK(differentiates(a.instance.test(star), 0 * 8 + 0, 1 * 8 + 0));
}

TEST_CASE("Fact 2: a test separating {i,j} and {i,k} never separates {j,k}") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    Bitset t(6);
    for (Item i = 0; i < 6; ++i)
      if (rng() & 1) t.set(i);
    for (Item i = 0; i < 6; ++i)
      for (Item j = 0; j < 6; ++j)
        for (Item k = 0; k < 6; ++k)
          if (i != j && i != k && j != k && differentiates(t, i, j) && differentiates(t, i, k))
            CHECK_FALSE(differentiates(t, j, k));
  }
}

TEST_CASE("diff_measure examples") {
  CHECK(diff_measure(Instance(5, {}), {}) == 10);
  const auto c = compact(3);
  CHECK(diff_measure(c.instance, std::vector<TestIndex>{0, 1, 2}) == 0);
  const auto a = atom({3, 2});
  CHECK(diff_measure(a.instance, {}) == 4032);
  CHECK(oracle::measure(a.instance, {}) == 4032);
}

TEST_CASE("gain examples") {
  Instance inst(4, {{}, {0, 1}});
  DiffState s(inst);
  CHECK(s.gain(0) == 0);
  CHECK(s.gain(1) == 4);

  const auto a = atom({3, 2});
  DiffState start(a.instance);
  for (auto k : a.adversarial) CHECK(start.gain(k) == 1024);
  for (auto k : a.planted_optimal) CHECK(start.gain(k) == 896);
}

TEST_CASE("refine") {
  Instance inst(4, {{0, 1}});
  DiffState s(inst);
  CHECK(s.measure() == 6);
  CHECK(s.refine(0) == 4);
  CHECK(s.measure() == 2);
  CHECK(s.classes() == std::vector<std::vector<Item>>{{0, 1}, {2, 3}});
  CHECK(s.refine(0) == 0);  // idempotent
  CHECK(s.classes() == std::vector<std::vector<Item>>{{0, 1}, {2, 3}});
  CHECK(s.selected() == std::vector<TestIndex>{0, 0});

  const auto c = compact(3);
  DiffState d(c.instance);
  for (TestIndex k = 0; k < 3; ++k) d.refine(k);
  CHECK(d.measure() == 0);
  for (const auto& cls : d.classes()) CHECK(cls.size() == 1);
}

TEST_CASE("is_test_set on compact") {
  const auto c = compact(3);
  CHECK(is_test_set(c.instance, std::vector<TestIndex>{0, 1, 2}));
  CHECK_FALSE(is_test_set(c.instance, std::vector<TestIndex>{0, 1}));
  CHECK_FALSE(is_test_set(c.instance, std::vector<TestIndex>{0, 2}));
  CHECK_FALSE(is_test_set(c.instance, std::vector<TestIndex>{1, 2}));
}

TEST_CASE("pair_diff_count") {
  const auto c = compact(2);
  CHECK(pair_diff_count(c.instance, {}, 0, 1) == 0);
  const std::vector<TestIndex> all{0, 1};
  CHECK(pair_diff_count(c.instance, all, 1, 2) == 2);
  CHECK(pair_diff_count(c.instance, all, 1, 3) == 1);
  CHECK_THROWS_AS(pair_diff_count(c.instance, all, 2, 2), std::invalid_argument);
}

TEST_CASE("feasibility errors name a pair") {
  Instance inst(3, {{0}});
  const auto p = find_undifferentiable_pair(inst);
  REQUIRE(p);
  CHECK(*p == std::pair<Item, Item>{1, 2});
  try {
    require_feasible(inst);
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(e.first() == 1);
    CHECK(e.second() == 2);
  }
}

TEST_CASE("minimalize") {
  const auto c = compact(3);
  const std::vector<TestIndex> minimal{0, 1, 2};
  CHECK(minimalize(c.instance, minimal) == minimal);
  Instance dup(4, {{0, 1}, {0, 2}, {0, 1}});
  CHECK(minimalize(dup, std::vector<TestIndex>{0, 1, 2}) == std::vector<TestIndex>{0, 1});
  CHECK_THROWS_AS(minimalize(c.instance, std::vector<TestIndex>{0, 1}), ContractViolation);

  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng() % 14;
    const auto inst = oracle::random_instance(rng, n, 3 + rng() % 12, 0.5);
    if (find_undifferentiable_pair(inst)) continue;
    const auto out = minimalize(inst, sga(inst).selected);
    CHECK(out.size() <= n - 1);
    CHECK(is_test_set(inst, out));
    for (std::size_t drop = 0; drop < out.size(); ++drop) {
      auto fewer = out;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK_FALSE(is_test_set(inst, fewer));
    }
  }
}

TEST_CASE("partition state agrees with brute force on random grouped instances") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rng() % 64;
    const std::size_t groups = 1 + rng() % std::min<std::size_t>(n, 4);
    auto tests = oracle::random_instance(rng, n, rng() % 10, 0.1 + 0.8 * (rng() % 100) / 100.0);
    std::vector<std::vector<Item>> members;
    for (std::size_t k = 0; k < tests.test_count(); ++k)
      members.emplace_back(tests.members(k).begin(), tests.members(k).end());
    Instance inst(n, oracle::random_groups(rng, n, groups), members);

    DiffState s(inst);
    std::vector<TestIndex> sel;
    CHECK(s.measure() == oracle::measure(inst, sel));
    for (int step = 0; step < 6 && inst.test_count() > 0; ++step) {
      const TestIndex k = rng() % inst.test_count();
      const auto before = s.measure();
      const auto g = s.gain(k);
      auto next = sel;
      next.push_back(k);
      CHECK(g == oracle::measure(inst, sel) - oracle::measure(inst, next));
      CHECK(s.refine(k) == g);
      CHECK(s.measure() == before - g);
      sel = next;
      CHECK(s.measure() == oracle::measure(inst, sel));
      // Same class iff no selected test separates the pair.
      const auto in = oracle::membership(inst);
      oracle::for_each_pair(inst, [&](Item i, Item j) {
        CHECK((s.class_of(i) == s.class_of(j)) == (oracle::separating(in, sel, i, j) == 0));
      });
    }
  }
}

TEST_CASE("Fact 4: any test set has at least ceil(log2 max group) tests") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng() % 10;
    const auto inst = oracle::random_instance(rng, n, 4 + rng() % 6, 0.5);
    if (find_undifferentiable_pair(inst)) continue;
    const auto sel = sga(inst).selected;
    std::size_t lb = 0;
    while ((std::size_t{1} << lb) < inst.max_group_size()) ++lb;
    CHECK(sel.size() >= lb);
  }
}
