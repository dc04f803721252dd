#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "formats.hpp"
#include "testset/generators.hpp"

namespace testset::cli {

const std::vector<std::string>& family_names();
bool family_uses_seed(const std::string& family);

// Fills defaults for the family and rejects unknown or ill-typed keys.
// Keys: compact {q}, atom {q,t}, level {q,J,t}, complete {q,J},
// sc-adv {N,M_star}, random {n,m,density,feasible}.
Json effective_params(const std::string& family, const Json& given);

// Builds an instance from effective params. Throws std::invalid_argument for
// bad parameters, SizeCapError past the limit, InfeasibleError when a
// feasible random draw is requested and none turns up.
LabeledInstance generate(const std::string& family, const Json& params, std::uint64_t seed,
                         const GeneratorLimits& limits);

// Predicted sizes where the family has closed forms.
std::optional<SizePrediction> predict(const std::string& family, const Json& params);

// "k=v;k=v" in key order, for CSV cells.
std::string params_text(const Json& params);

}  // namespace testset::cli
