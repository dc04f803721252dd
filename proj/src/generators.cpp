#include "testset/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "testset/core.hpp"
#include "testset/errors.hpp"

namespace testset {

namespace {

constexpr int kMaxExponent = 40;

std::uint64_t pow2(std::int64_t e) {
  if (e < 0 || e > kMaxExponent) throw SizeCapError("generator: size exponent out of range", 0, 0);
  return std::uint64_t{1} << e;
}

void require_under_cap(const char* what, std::uint64_t items, const GeneratorLimits& limits) {
  if (items > limits.max_items)
    throw SizeCapError(std::string(what) + ": " + std::to_string(items) +
                           " items exceed the cap of " + std::to_string(limits.max_items) +
                           " (raise it to build anyway)",
                       items, limits.max_items);
}

TestLabel make_label(std::string family, std::optional<int> level, std::optional<int> axis,
                     std::optional<int> block, std::optional<int> bit, std::optional<int> clone) {
  TestLabel l;
  l.family = std::move(family);
  l.level = level;
  l.axis = axis;
  l.block = block;
  l.bit = bit;
  l.clone = clone;
  return l;
}

// Geometry of one level-t universe: points (x_1..x_t, y, z, w) with
// x_i in [2^q], y in [2^(q-2)], z in [J!/t], w in [t 2^(q(J-t)+2)].
struct LevelLayout {
  int q, J, t;
  std::uint64_t Q, Y, Z, W, group_size, N;

  LevelLayout(int q_, int J_, int t_) : q(q_), J(J_), t(t_) {
    Q = pow2(q);
    Y = pow2(q - 2);
    Z = factorial(J) / static_cast<std::uint64_t>(t);
    W = static_cast<std::uint64_t>(t) * pow2(static_cast<std::int64_t>(q) * (J - t) + 2);
    group_size = pow2(static_cast<std::int64_t>(q) * t);
    N = Y * Z * W * group_size;
  }
  std::uint64_t groups() const { return Y * Z * W; }

  struct Point {
    std::uint64_t y, z, w;
    std::vector<std::uint64_t> x;  // x[i] = x_{i+1}, 0-based values
  };
  Point decode(std::uint64_t u) const {
    Point p;
    const std::uint64_t g = u / group_size;
    std::uint64_t rest = u % group_size;
    p.y = g / (Z * W);
    p.z = (g / W) % Z;
    p.w = g % W;
    p.x.assign(static_cast<std::size_t>(t), 0);
    for (int i = t - 1; i >= 0; --i) {
      p.x[static_cast<std::size_t>(i)] = rest % Q;
      rest /= Q;
    }
    return p;
  }
  // T'_{t,i;j,k,l} slot in natural (i, j, k, l) order.
  std::size_t adversarial_slot(int i, std::uint64_t j, int k, std::uint64_t l) const {
    return static_cast<std::size_t>(((static_cast<std::uint64_t>(i) * Y + j) * q + k) * Z + l);
  }
  // T*_{t,i;j,l} slot in (i, j, l) order; there are exactly M* = J! 2^q of them.
  std::size_t optimal_slot(int i, std::uint64_t j, std::uint64_t l) const {
    return static_cast<std::size_t>((static_cast<std::uint64_t>(i) * Q + j) * Z + l);
  }
  std::size_t adversarial_count() const { return static_cast<std::size_t>(t * Y * q * Z); }
  std::size_t optimal_count() const { return static_cast<std::size_t>(t * Q * Z); }
};

void validate_level(const LevelParams& p) {
  if (p.q < 2) throw std::invalid_argument("level: q must be >= 2");
  if (p.J < 1 || p.J > 10) throw std::invalid_argument("level: J must be in [1, 10]");
  if (p.t < 1 || p.t > p.J) throw std::invalid_argument("level: t must be in [1, J]");
}

}  // namespace

double harmonic(int k) {
  double h = 0.0;
  for (int i = k; i >= 1; --i) h += 1.0 / i;
  return h;
}

std::uint64_t factorial(int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("factorial: argument out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

SizePrediction predict_atom(const AtomParams& p) {
  if (p.q < 2) throw std::invalid_argument("atom: q must be >= 2");
  if (p.t < 1) throw std::invalid_argument("atom: t must be >= 1");
  SizePrediction s;
  s.groups = pow2(p.q - 2);
  s.items = pow2(static_cast<std::int64_t>(p.q) * p.t + p.q - 2);
  s.tests = static_cast<std::uint64_t>(p.t) * pow2(p.q) + static_cast<std::uint64_t>(p.q) * p.t * pow2(p.q - 2);
  return s;
}

SizePrediction predict_level(const LevelParams& p) {
  validate_level(p);
  const LevelLayout L(p.q, p.J, p.t);
  SizePrediction s;
  s.items = L.N;
  s.groups = L.groups();
  s.tests = L.adversarial_count() + L.optimal_count();
  return s;
}

SizePrediction predict_complete(const CompleteParams& p) {
  if (p.q < 3) throw std::invalid_argument("complete: q must be >= 3 (Enlargement pairs y-blocks 2j-1, 2j; q = 2 has one)");
  if (p.J < 1 || p.J > 10) throw std::invalid_argument("complete: J must be in [1, 10]");
  const std::uint64_t M = factorial(p.J) * pow2(p.q);
  const std::uint64_t N = factorial(p.J) * pow2(static_cast<std::int64_t>(p.q) * (p.J + 1));
  SizePrediction s;
  s.items = static_cast<std::uint64_t>(p.J + 2) * N;
  s.groups = N;
  std::uint64_t enlarged = 0;
  for (int t = 1; t <= p.J; ++t) {
    const LevelLayout L(p.q, p.J, t);
    s.groups += L.groups();
    enlarged += static_cast<std::uint64_t>(p.q) * M / (8 * static_cast<std::uint64_t>(t));
  }
  // T'_0 size is only known after running the depletion; estimate by Lemma-1 style bound.
  const double adv = static_cast<double>(M) * (std::log(static_cast<double>(N) / static_cast<double>(M)) + 1.0);
  s.tests = enlarged + M + static_cast<std::uint64_t>(std::ceil(adv));
  return s;
}

LabeledInstance compact(int q) {
  if (q < 1) throw std::invalid_argument("compact: q must be >= 1");
  if (q > 24) throw SizeCapError("compact: q too large", static_cast<std::uint64_t>(q), 24);
  const std::size_t n = std::size_t{1} << q;
  std::vector<std::vector<Item>> tests(static_cast<std::size_t>(q));
  for (std::size_t x = 0; x < n; ++x)
    for (int k = 0; k < q; ++k)
      if ((x >> k) & 1U) tests[static_cast<std::size_t>(k)].push_back(static_cast<Item>(x));
  LabeledInstance out{Instance(n, std::move(tests))};
  out.generator = "compact";
  out.params = {{"q", q}};
  for (int k = 0; k < q; ++k) {
    out.planted_optimal.push_back(static_cast<std::size_t>(k));
    out.labels.push_back(make_label("compact", std::nullopt, std::nullopt, std::nullopt, k + 1, std::nullopt));
  }
  out.optimal_known = true;
  return out;
}

LabeledInstance atom(const AtomParams& p, const GeneratorLimits& limits) {
  const SizePrediction size = predict_atom(p);
  require_under_cap("atom", size.items, limits);
  const int q = p.q, t = p.t;
  const std::uint64_t Q = pow2(q), Y = pow2(q - 2), G = pow2(static_cast<std::int64_t>(q) * t);
  const std::size_t n = static_cast<std::size_t>(size.items);

  std::vector<std::vector<Item>> groups(static_cast<std::size_t>(Y));
  const std::size_t adv_count = static_cast<std::size_t>(t) * Y * q;
  std::vector<std::vector<Item>> adv(adv_count), opt(static_cast<std::size_t>(t) * Q);
  for (std::uint64_t u = 0; u < n; ++u) {
    const Item item = static_cast<Item>(u);
    const std::uint64_t y = u / G;
    groups[y].push_back(item);
    std::uint64_t rest = u % G;
    std::vector<std::uint64_t> x(static_cast<std::size_t>(t));
    for (int i = t - 1; i >= 0; --i) {
      x[static_cast<std::size_t>(i)] = rest % Q;
      rest /= Q;
    }
    for (int i = 0; i < t; ++i) {
      const std::uint64_t xi = x[static_cast<std::size_t>(i)];
      for (int k = 0; k < q; ++k)
        if ((xi >> k) & 1U) adv[(static_cast<std::size_t>(i) * Y + y) * q + k].push_back(item);
      opt[static_cast<std::size_t>(i) * Q + xi].push_back(item);
    }
  }

  std::vector<std::vector<Item>> tests;
  tests.reserve(adv.size() + opt.size());
  LabeledInstance out{Instance(0, {})};
  std::vector<TestLabel> labels;
  for (int i = 0; i < t; ++i)
    for (std::uint64_t j = 0; j < Y; ++j)
      for (int k = 0; k < q; ++k) {
        tests.push_back(std::move(adv[(static_cast<std::size_t>(i) * Y + j) * q + k]));
        labels.push_back(make_label("T'", t, i + 1, static_cast<int>(j) + 1, k + 1, std::nullopt));
      }
  for (int i = 0; i < t; ++i)
    for (std::uint64_t j = 0; j < Q; ++j) {
      tests.push_back(std::move(opt[static_cast<std::size_t>(i) * Q + j]));
      labels.push_back(make_label("T*", t, i + 1, static_cast<int>(j) + 1, std::nullopt, std::nullopt));
    }
  out.instance = Instance(n, std::move(groups), std::move(tests));
  out.generator = "atom";
  out.params = {{"q", q}, {"t", t}};
  out.labels = std::move(labels);
  for (std::size_t k = 0; k < adv_count; ++k) out.adversarial.push_back(k);
  for (std::size_t k = adv_count; k < out.instance.test_count(); ++k) out.planted_optimal.push_back(k);

  if (!is_test_set(out.instance, out.adversarial) || !is_test_set(out.instance, out.planted_optimal))
    throw std::logic_error("atom: generated families are not test sets");
  return out;
}

LabeledInstance level(const LevelParams& p, const GeneratorLimits& limits) {
  const SizePrediction size = predict_level(p);
  require_under_cap("level", size.items, limits);
  const LevelLayout L(p.q, p.J, p.t);
  const std::size_t n = static_cast<std::size_t>(L.N);

  std::vector<std::vector<Item>> groups(static_cast<std::size_t>(L.groups()));
  std::vector<std::vector<Item>> adv(L.adversarial_count()), opt(L.optimal_count());
  for (std::uint64_t u = 0; u < n; ++u) {
    const Item item = static_cast<Item>(u);
    groups[u / L.group_size].push_back(item);
    const auto pt = L.decode(u);
    for (int i = 0; i < p.t; ++i) {
      const std::uint64_t xi = pt.x[static_cast<std::size_t>(i)];
      for (int k = 0; k < p.q; ++k)
        if ((xi >> k) & 1U) adv[L.adversarial_slot(i, pt.y, k, pt.z)].push_back(item);
      opt[L.optimal_slot(i, xi, pt.z)].push_back(item);
    }
  }

  std::vector<std::vector<Item>> tests;
  std::vector<TestLabel> labels;
  for (int i = 0; i < p.t; ++i)
    for (std::uint64_t j = 0; j < L.Y; ++j)
      for (int k = 0; k < p.q; ++k)
        for (std::uint64_t l = 0; l < L.Z; ++l) {
          tests.push_back(std::move(adv[L.adversarial_slot(i, j, k, l)]));
          labels.push_back(make_label("T'", p.t, i + 1, static_cast<int>(j) + 1, k + 1, static_cast<int>(l) + 1));
        }
  for (int i = 0; i < p.t; ++i)
    for (std::uint64_t j = 0; j < L.Q; ++j)
      for (std::uint64_t l = 0; l < L.Z; ++l) {
        tests.push_back(std::move(opt[L.optimal_slot(i, j, l)]));
        labels.push_back(make_label("T*", p.t, i + 1, static_cast<int>(j) + 1, std::nullopt, static_cast<int>(l) + 1));
      }

  LabeledInstance out{Instance(n, std::move(groups), std::move(tests))};
  out.generator = "level";
  out.params = {{"q", p.q}, {"J", p.J}, {"t", p.t}};
  out.labels = std::move(labels);
  const std::size_t adv_count = L.adversarial_count();
  for (std::size_t k = 0; k < adv_count; ++k) out.adversarial.push_back(k);
  for (std::size_t k = adv_count; k < out.instance.test_count(); ++k) out.planted_optimal.push_back(k);

  if (out.planted_optimal.size() != factorial(p.J) * L.Q)
    throw std::logic_error("level: |T*| != M*");
  if (!is_test_set(out.instance, out.adversarial) || !is_test_set(out.instance, out.planted_optimal))
    throw std::logic_error("level: generated families are not test sets");
  return out;
}

LevelMeasures level_measures(const LevelParams& p) {
  validate_level(p);
  const LevelLayout L(p.q, p.J, p.t);
  LevelMeasures m;
  m.N = L.N;
  m.M_star = factorial(p.J) * L.Q;
  const std::uint64_t clones = L.Z;
  m.begin_total = pow2(static_cast<std::int64_t>(p.q) * (p.t - 1)) * L.N;
  m.end_total = 2 * pow2(static_cast<std::int64_t>(p.q) * (p.t - 1)) * L.N / L.Q;
  m.begin_per_test = m.begin_total / clones;
  m.end_per_test = m.end_total / clones;
  m.optimal_initial_per_test = m.begin_per_test - m.begin_per_test / L.Q;
  return m;
}

SetCoverInstance sc_adversarial(std::uint64_t N, std::uint64_t m_star) {
  if (m_star < 2) throw std::invalid_argument("sc_adversarial: M* must be >= 2");
  if (N == 0 || N % m_star != 0) throw std::invalid_argument("sc_adversarial: M* must divide N");
  if (N > 0xffffffffULL) throw SizeCapError("sc_adversarial: N too large", N, 0xffffffffULL);
  const std::uint64_t B = N / m_star;

  SetCoverInstance sc;
  sc.element_count = static_cast<std::size_t>(N);
  std::vector<std::vector<std::uint32_t>> adversarial;
  if (N > m_star) {
    std::vector<std::uint64_t> taken(m_star, 0);
    std::uint64_t remaining = N;
    while (remaining > 0) {
      const std::uint64_t share = (remaining + m_star - 1) / m_star;
      std::vector<std::uint32_t> subset;
      for (std::uint64_t s = 0; s < share; ++s) {
        // Fullest block, lowest index on ties.
        std::uint64_t best = 0;
        for (std::uint64_t b = 1; b < m_star; ++b)
          if (B - taken[b] > B - taken[best]) best = b;
        subset.push_back(static_cast<std::uint32_t>(best * B + taken[best]));
        ++taken[best];
      }
      std::sort(subset.begin(), subset.end());
      remaining -= share;
      adversarial.push_back(std::move(subset));
    }
  }
  for (std::size_t s = 0; s < adversarial.size(); ++s) {
    sc.subsets.push_back(std::move(adversarial[s]));
    sc.adversarial.push_back(s);
  }
  for (std::uint64_t b = 0; b < m_star; ++b) {
    std::vector<std::uint32_t> block;
    for (std::uint64_t e = b * B; e < (b + 1) * B; ++e) block.push_back(static_cast<std::uint32_t>(e));
    sc.planted_optimal.push_back(sc.subsets.size());
    sc.subsets.push_back(std::move(block));
  }

  // Greedy must return exactly the adversarial family (blocks only when N = M*).
  const SolveResult run = greedy_setcover(sc, TieBreak::lowest_index());
  const auto& expected = N > m_star ? sc.adversarial : sc.planted_optimal;
  if (run.selected != expected) throw std::logic_error("sc_adversarial: greedy deviated from the planted run");
  const double lower = (static_cast<double>(m_star) - 1.0) *
                           (std::log(static_cast<double>(N)) - std::log(static_cast<double>(m_star))) -
                       static_cast<double>(m_star);
  if (static_cast<double>(run.size()) < lower) throw std::logic_error("sc_adversarial: greedy cover below the lower bound");
  if (run.steps.front().gain != B || run.steps.back().gain != 1)
    throw std::logic_error("sc_adversarial: greedy step sizes do not run from N/M* down to 1");

  // Packing certificate: M* elements, no two inside a common subset.
  std::vector<std::vector<std::size_t>> owners(static_cast<std::size_t>(N));
  for (std::size_t s = 0; s < sc.subsets.size(); ++s)
    for (auto e : sc.subsets[s]) owners[e].push_back(s);
  std::vector<bool> hit(sc.subsets.size(), false);
  std::uint64_t packed = 0;
  for (auto s = run.selected.rbegin(); s != run.selected.rend() && packed < m_star; ++s) {
    for (auto e : sc.subsets[*s]) {
      const bool free = std::none_of(owners[e].begin(), owners[e].end(), [&](std::size_t o) { return hit[o]; });
      if (!free) continue;
      for (auto o : owners[e]) hit[o] = true;
      ++packed;
    }
  }
  if (packed < m_star) throw std::logic_error("sc_adversarial: could not certify the planted optimum");
  return sc;
}

LabeledInstance sc_adversarial_instance(std::uint64_t N, std::uint64_t m_star) {
  const SetCoverInstance sc = sc_adversarial(N, m_star);
  const std::size_t n = static_cast<std::size_t>(2 * N);
  std::vector<std::vector<Item>> groups(static_cast<std::size_t>(N));
  for (std::uint64_t p = 0; p < N; ++p)
    groups[p] = {static_cast<Item>(2 * p), static_cast<Item>(2 * p + 1)};
  std::vector<std::vector<Item>> tests;
  for (const auto& subset : sc.subsets) {
    std::vector<Item> t;
    t.reserve(subset.size());
    for (auto e : subset) t.push_back(static_cast<Item>(2 * e));
    tests.push_back(std::move(t));
  }
  LabeledInstance out{Instance(n, std::move(groups), std::move(tests))};
  out.generator = "sc-adv";
  out.params = {{"N", static_cast<std::int64_t>(N)}, {"M_star", static_cast<std::int64_t>(m_star)}};
  out.adversarial = sc.adversarial;
  out.planted_optimal = sc.planted_optimal;
  for (std::size_t s = 0; s < sc.adversarial.size(); ++s)
    out.labels.push_back(make_label("T'", 0, std::nullopt, static_cast<int>(s) + 1, std::nullopt, std::nullopt));
  for (std::size_t b = 0; b < sc.planted_optimal.size(); ++b)
    out.labels.push_back(make_label("T*", 0, std::nullopt, static_cast<int>(b) + 1, std::nullopt, std::nullopt));
  out.optimal_known = true;
  if (out.adversarial.empty()) out.adversarial = out.planted_optimal;
  return out;
}

LabeledInstance complete(const CompleteParams& p, const GeneratorLimits& limits) {
  const SizePrediction size = predict_complete(p);
  require_under_cap("complete", size.items, limits);
  const int q = p.q, J = p.J;
  const std::uint64_t M = factorial(J) * pow2(q);
  const std::uint64_t N = factorial(J) * pow2(static_cast<std::int64_t>(q) * (J + 1));
  const std::size_t n = static_cast<std::size_t>(size.items);

  // Merging needs |T'_t - T'_{t,1}| <= |T'_{1,1} u ... u T'_{t-1,1}|.
  for (int t = 2; t <= J; ++t)
    if (2.0 * (1.0 - 1.0 / t) > harmonic(t - 1) + 1e-12)
      throw std::logic_error("complete: Merging infeasible at t = " + std::to_string(t));

  const SetCoverInstance sc = sc_adversarial(N, M);

  std::vector<std::vector<Item>> groups;
  groups.reserve(static_cast<std::size_t>(size.groups));
  for (std::uint64_t e = 0; e < N; ++e) groups.push_back({static_cast<Item>(2 * e), static_cast<Item>(2 * e + 1)});

  struct Piece {
    std::vector<Item> items;
    TestLabel label;
  };
  // enlarged[t]: T'_{t,1} after Enlargement, natural (j, k, l) order.
  std::vector<std::vector<Piece>> enlarged(static_cast<std::size_t>(J + 1));
  // sources[t]: T'_{t,i}, i >= 2, natural (i, j, k, l) order.
  std::vector<std::vector<Piece>> sources(static_cast<std::size_t>(J + 1));
  std::vector<std::vector<Item>> optimal(static_cast<std::size_t>(M));
  for (std::size_t m = 0; m < M; ++m)
    for (auto e : sc.subsets[sc.planted_optimal[m]]) optimal[m].push_back(static_cast<Item>(2 * e));

  for (int t = 1; t <= J; ++t) {
    const LevelLayout L(q, J, t);
    const std::uint64_t offset = 2 * N + static_cast<std::uint64_t>(t - 1) * N;
    const std::uint64_t half_y = L.Y / 2;
    auto& big = enlarged[static_cast<std::size_t>(t)];
    big.resize(static_cast<std::size_t>(half_y * q * L.Z));
    for (std::uint64_t j = 0; j < half_y; ++j)
      for (int k = 0; k < q; ++k)
        for (std::uint64_t l = 0; l < L.Z; ++l)
          big[static_cast<std::size_t>((j * q + k) * L.Z + l)].label =
              make_label("T'", t, 1, static_cast<int>(j) + 1, k + 1, static_cast<int>(l) + 1);
    auto& src = sources[static_cast<std::size_t>(t)];
    const std::size_t per_axis = static_cast<std::size_t>(L.Y * q * L.Z);
    src.resize(static_cast<std::size_t>(t - 1) * per_axis);
    for (int i = 1; i < t; ++i)
      for (std::uint64_t j = 0; j < L.Y; ++j)
        for (int k = 0; k < q; ++k)
          for (std::uint64_t l = 0; l < L.Z; ++l)
            src[L.adversarial_slot(i, j, k, l) - per_axis].label =
                make_label("T'", t, i + 1, static_cast<int>(j) + 1, k + 1, static_cast<int>(l) + 1);

    const std::size_t first_group = groups.size();
    groups.resize(first_group + static_cast<std::size_t>(L.groups()));
    for (std::uint64_t u = 0; u < L.N; ++u) {
      const Item item = static_cast<Item>(offset + u);
      groups[first_group + static_cast<std::size_t>(u / L.group_size)].push_back(item);
      const auto pt = L.decode(u);
      const std::uint64_t x1 = pt.x[0];
      for (int k = 0; k < q; ++k)
        if ((x1 >> k) & 1U) big[static_cast<std::size_t>(((pt.y / 2) * q + k) * L.Z + pt.z)].items.push_back(item);
      for (int i = 1; i < t; ++i) {
        const std::uint64_t xi = pt.x[static_cast<std::size_t>(i)];
        for (int k = 0; k < q; ++k)
          if ((xi >> k) & 1U) src[L.adversarial_slot(i, pt.y, k, pt.z) - per_axis].items.push_back(item);
      }
      for (int i = 0; i < t; ++i)
        optimal[L.optimal_slot(i, pt.x[static_cast<std::size_t>(i)], pt.z)].push_back(item);
    }
    if (big.size() * 8 * static_cast<std::size_t>(t) != static_cast<std::size_t>(q) * M)
      throw std::logic_error("complete: |T'_{t,1}| != q M* / (8 t)");
  }

  // Merging: for t = J..2, fold T'_t - T'_{t,1} one-by-one into
  // T'_{t-1,1}, T'_{t-2,1}, ..., T'_{1,1}, each in natural order.
  for (int t = J; t >= 2; --t) {
    std::vector<Piece*> targets;
    for (int s = t - 1; s >= 1; --s)
      for (auto& piece : enlarged[static_cast<std::size_t>(s)]) targets.push_back(&piece);
    auto& src = sources[static_cast<std::size_t>(t)];
    if (src.size() > targets.size()) throw std::logic_error("complete: not enough Merging targets");
    for (std::size_t r = 0; r < src.size(); ++r) {
      auto& dst = *targets[r];
      dst.items.insert(dst.items.end(), src[r].items.begin(), src[r].items.end());
      dst.label.merged.push_back(src[r].label);
    }
  }

  std::vector<std::vector<Item>> tests;
  LabeledInstance out{Instance(0, {})};
  std::vector<TestLabel> labels;
  for (int t = J; t >= 1; --t)
    for (auto& piece : enlarged[static_cast<std::size_t>(t)]) {
      tests.push_back(std::move(piece.items));
      labels.push_back(std::move(piece.label));
    }
  for (std::size_t s = 0; s < sc.adversarial.size(); ++s) {
    std::vector<Item> t;
    for (auto e : sc.subsets[sc.adversarial[s]]) t.push_back(static_cast<Item>(2 * e));
    tests.push_back(std::move(t));
    labels.push_back(make_label("T'", 0, std::nullopt, static_cast<int>(s) + 1, std::nullopt, std::nullopt));
  }
  const std::size_t adv_count = tests.size();
  for (std::size_t m = 0; m < M; ++m) {
    tests.push_back(std::move(optimal[m]));
    labels.push_back(make_label("T*", std::nullopt, std::nullopt, static_cast<int>(m) + 1, std::nullopt, std::nullopt));
  }

  out.instance = Instance(n, std::move(groups), std::move(tests));
  out.generator = "complete";
  out.params = {{"q", q}, {"J", J}, {"N", static_cast<std::int64_t>(N)}, {"M_star", static_cast<std::int64_t>(M)},
                {"adversarial_sc", static_cast<std::int64_t>(sc.adversarial.size())}};
  out.labels = std::move(labels);
  for (std::size_t k = 0; k < adv_count; ++k) out.adversarial.push_back(k);
  for (std::size_t k = adv_count; k < out.instance.test_count(); ++k) out.planted_optimal.push_back(k);
  out.optimal_known = true;

  if (!is_test_set(out.instance, out.planted_optimal))
    throw std::logic_error("complete: planted optimum is not a test set");
  if (!is_test_set(out.instance, out.adversarial))
    throw std::logic_error("complete: adversarial family is not a test set");
  return out;
}

RandomInstance random_instance(std::size_t n, std::size_t m, double density, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random: n must be >= 1");
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("random: density must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Item>> tests(m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      // 53-bit uniform in [0, 1); std::bernoulli_distribution is not portable.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < density) tests[k].push_back(static_cast<Item>(i));
    }
  RandomInstance out{Instance(n, std::move(tests)), false};
  out.feasible = !find_undifferentiable_pair(out.instance).has_value();
  return out;
}

Instance random_feasible(std::size_t n, std::size_t m, double density, std::uint64_t seed, int attempts) {
  for (int a = 0; a < attempts; ++a) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL;
    auto r = random_instance(n, m, density, s);
    if (r.feasible) return std::move(r.instance);
  }
  throw InfeasibleError("random: no feasible instance within " + std::to_string(attempts) + " draws", 0, 0);
}

}  // namespace testset
