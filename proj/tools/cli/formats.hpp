#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "testset/generators.hpp"
#include "testset/instance.hpp"

namespace testset::cli {

using Json = nlohmann::ordered_json;

// Unreadable, unwritable, or malformed file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance file (JSON):
//   {"n": 4, "groups": [[0,1],[2,3]], "tests": [[0],[2]],
//    "test_names": [...], "item_names": [...],
//    "labels": {"generator": "...", "params": {...}, "optimal_known": false, "tests": [...]},
//    "planted_optimal": [...], "adversarial": [...]}
// "groups" is written only for grouped instances; the other optional keys only
// when non-empty.
Json instance_to_json(const LabeledInstance& li);
LabeledInstance instance_from_json(const Json& doc);

Json label_to_json(const TestLabel& label);
TestLabel label_from_json(const Json& doc);
// Compact display form, e.g. "T'(t=2,i=1,j=1,k=1,l=1)+2".
std::string label_text(const TestLabel& label);

// Matrix file: "n m" on the first line, then m rows of n characters in {0,1};
// row r column c is 1 iff item c belongs to test r. Single group only.
std::string instance_to_matrix(const Instance& instance);
Instance instance_from_matrix(const std::string& text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// Dispatch on extension: ".json" is an instance file, anything else a matrix.
LabeledInstance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const LabeledInstance& li);

// Canonical text: one line, trailing newline. Byte-stable for equal input.
std::string dump(const Json& doc);

// FNV-1a of the canonical instance file, as 16 hex digits.
std::string fingerprint(const LabeledInstance& li);

}  // namespace testset::cli
