#include "families.hpp"

#include <stdexcept>

#include "testset/errors.hpp"

namespace testset::cli {

namespace {

struct Default {
  const char* key;
  Json value;
};

const std::vector<Default>& defaults_for(const std::string& family) {
  static const std::vector<Default> compact_d{{"q", 3}};
  static const std::vector<Default> atom_d{{"q", 3}, {"t", 2}};
  static const std::vector<Default> level_d{{"q", 2}, {"J", 2}, {"t", 2}};
  static const std::vector<Default> complete_d{{"q", 3}, {"J", 2}};
  static const std::vector<Default> sc_d{{"N", 1024}, {"M_star", 16}};
  static const std::vector<Default> random_d{{"n", 10}, {"m", 12}, {"density", 0.5}, {"feasible", true}};
  if (family == "compact") return compact_d;
  if (family == "atom") return atom_d;
  if (family == "level") return level_d;
  if (family == "complete") return complete_d;
  if (family == "sc-adv") return sc_d;
  if (family == "random") return random_d;
  throw std::invalid_argument("unknown family '" + family + "'");
}

std::int64_t integer(const Json& params, const char* key) { return params.at(key).get<std::int64_t>(); }

int small(const Json& params, const char* key) {
  const auto v = integer(params, key);
  if (v < -1000000 || v > 1000000) throw std::invalid_argument(std::string(key) + " out of range");
  return static_cast<int>(v);
}

std::uint64_t positive(const Json& params, const char* key) {
  const auto v = integer(params, key);
  if (v < 0) throw std::invalid_argument(std::string(key) + " must be non-negative");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"compact", "atom", "level", "complete", "sc-adv", "random"};
  return names;
}

bool family_uses_seed(const std::string& family) { return family == "random"; }

Json effective_params(const std::string& family, const Json& given) {
  const auto& defaults = defaults_for(family);
  if (!given.is_null() && !given.is_object()) throw std::invalid_argument("parameters must be an object");
  Json out = Json::object();
  for (const auto& d : defaults) {
    const bool present = given.is_object() && given.contains(d.key);
    const Json& v = present ? given.at(d.key) : d.value;
    if (d.value.is_boolean() && !v.is_boolean())
      throw std::invalid_argument(family + ": " + d.key + " must be a boolean");
    if (d.value.is_number_integer() && !v.is_number_integer())
      throw std::invalid_argument(family + ": " + d.key + " must be an integer");
    if (d.value.is_number_float() && !v.is_number())
      throw std::invalid_argument(family + ": " + d.key + " must be a number");
    out[d.key] = d.value.is_number_float() ? Json(v.get<double>()) : v;
  }
  if (given.is_object())
    for (const auto& [k, v] : given.items()) {
      bool known = false;
      for (const auto& d : defaults) known = known || k == d.key;
      if (!known) throw std::invalid_argument(family + ": unknown parameter '" + k + "'");
    }
  return out;
}

LabeledInstance generate(const std::string& family, const Json& params, std::uint64_t seed,
                         const GeneratorLimits& limits) {
  if (family == "compact") return compact(small(params, "q"));
  if (family == "atom") return atom({small(params, "q"), small(params, "t")}, limits);
  if (family == "level") return level({small(params, "q"), small(params, "J"), small(params, "t")}, limits);
  if (family == "complete") return complete({small(params, "q"), small(params, "J")}, limits);
  if (family == "sc-adv") {
    const auto N = positive(params, "N");
    if (2 * N > limits.max_items)
      throw SizeCapError("sc-adv: " + std::to_string(2 * N) + " items exceed the cap", 2 * N, limits.max_items);
    return sc_adversarial_instance(N, positive(params, "M_star"));
  }
  if (family == "random") {
    const auto n = positive(params, "n"), m = positive(params, "m");
    if (n > limits.max_items) throw SizeCapError("random: n exceeds the cap", n, limits.max_items);
    const double density = params.at("density").get<double>();
    LabeledInstance li{Instance(0, {})};
    if (params.at("feasible").get<bool>())
      li.instance = random_feasible(n, m, density, seed);
    else
      li.instance = random_instance(n, m, density, seed).instance;
    li.generator = "random";
    li.params = {{"n", static_cast<std::int64_t>(n)}, {"m", static_cast<std::int64_t>(m)},
                 {"seed", static_cast<std::int64_t>(seed)}};
    return li;
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

std::optional<SizePrediction> predict(const std::string& family, const Json& params) {
  if (family == "compact") {
    const int q = small(params, "q");
    if (q < 1 || q > 40) return std::nullopt;
    return SizePrediction{std::uint64_t{1} << q, 1, static_cast<std::uint64_t>(q)};
  }
  if (family == "atom") return predict_atom({small(params, "q"), small(params, "t")});
  if (family == "level") return predict_level({small(params, "q"), small(params, "J"), small(params, "t")});
  if (family == "complete") return predict_complete({small(params, "q"), small(params, "J")});
  if (family == "random") return SizePrediction{positive(params, "n"), 1, positive(params, "m")};
  return std::nullopt;
}

std::string params_text(const Json& params) {
  std::string s;
  for (const auto& [k, v] : params.items()) {
    if (!s.empty()) s += ';';
    s += k + "=" + v.dump();
  }
  return s;
}

}  // namespace testset::cli
