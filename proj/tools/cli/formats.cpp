#include "formats.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace testset::cli {

namespace {

Json opt_field(const std::optional<int>& v) { return v ? Json(*v) : Json(); }

template <typename T>
std::vector<T> index_list(const Json& doc, const char* what, std::uint64_t limit) {
  if (!doc.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<T> out;
  out.reserve(doc.size());
  for (const auto& v : doc) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw FormatError(std::string(what) + " must hold non-negative integers");
    const auto x = v.get<std::uint64_t>();
    if (x >= limit) throw FormatError(std::string(what) + ": index " + std::to_string(x) + " out of range");
    out.push_back(static_cast<T>(x));
  }
  return out;
}

std::vector<std::vector<Item>> item_lists(const Json& doc, const char* what) {
  if (!doc.is_array()) throw FormatError(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<Item>> out;
  out.reserve(doc.size());
  for (const auto& row : doc) out.push_back(index_list<Item>(row, what, std::numeric_limits<Item>::max()));
  return out;
}

std::vector<std::string> string_list(const Json& doc, const char* what) {
  if (!doc.is_array()) throw FormatError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : doc) {
    if (!v.is_string()) throw FormatError(std::string(what) + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

Json label_to_json(const TestLabel& label) {
  Json j;
  j["family"] = label.family;
  if (label.level) j["level"] = *label.level;
  if (label.axis) j["axis"] = *label.axis;
  if (label.block) j["block"] = *label.block;
  if (label.bit) j["bit"] = *label.bit;
  if (label.clone) j["clone"] = *label.clone;
  if (!label.merged.empty()) {
    j["merged"] = Json::array();
    for (const auto& m : label.merged) j["merged"].push_back(label_to_json(m));
  }
  return j;
}

TestLabel label_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("family") || !doc["family"].is_string())
    throw FormatError("label must be an object with a string \"family\"");
  TestLabel l;
  l.family = doc["family"].get<std::string>();
  auto field = [&](const char* key) -> std::optional<int> {
    if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
    if (!doc[key].is_number_integer()) throw FormatError(std::string("label field ") + key + " must be an integer");
    return doc[key].get<int>();
  };
  l.level = field("level");
  l.axis = field("axis");
  l.block = field("block");
  l.bit = field("bit");
  l.clone = field("clone");
  if (doc.contains("merged"))
    for (const auto& m : doc["merged"]) l.merged.push_back(label_from_json(m));
  return l;
}

std::string label_text(const TestLabel& label) {
  std::string s = label.family;
  std::string coords;
  auto add = [&](const char* name, const std::optional<int>& v) {
    if (!v) return;
    if (!coords.empty()) coords += ',';
    coords += name;
    coords += '=';
    coords += std::to_string(*v);
  };
  add("t", label.level);
  add("i", label.axis);
  add("j", label.block);
  add("k", label.bit);
  add("l", label.clone);
  if (!coords.empty()) s += "(" + coords + ")";
  if (!label.merged.empty()) s += "+" + std::to_string(label.merged.size());
  return s;
}

Json instance_to_json(const LabeledInstance& li) {
  const Instance& inst = li.instance;
  Json j;
  j["n"] = inst.item_count();
  if (!inst.single_group()) j["groups"] = inst.groups();
  Json tests = Json::array();
  for (std::size_t k = 0; k < inst.test_count(); ++k) {
    const auto m = inst.members(k);
    tests.push_back(std::vector<Item>(m.begin(), m.end()));
  }
  j["tests"] = std::move(tests);
  if (!inst.test_names().empty()) j["test_names"] = inst.test_names();
  if (!inst.item_names().empty()) j["item_names"] = inst.item_names();
  if (!li.generator.empty() || !li.labels.empty() || !li.params.empty() || li.optimal_known) {
    Json labels;
    labels["generator"] = li.generator;
    labels["params"] = Json::object();
    for (const auto& [k, v] : li.params) labels["params"][k] = v;
    labels["optimal_known"] = li.optimal_known;
    labels["tests"] = Json::array();
    for (const auto& l : li.labels) labels["tests"].push_back(label_to_json(l));
    j["labels"] = std::move(labels);
  }
  if (!li.planted_optimal.empty()) j["planted_optimal"] = li.planted_optimal;
  if (!li.adversarial.empty()) j["adversarial"] = li.adversarial;
  return j;
}

LabeledInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("instance file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() < 0)
    throw FormatError("instance file needs a non-negative integer \"n\"");
  if (!doc.contains("tests")) throw FormatError("instance file needs \"tests\"");
  const auto n = doc["n"].get<std::uint64_t>();
  if (n > std::numeric_limits<Item>::max()) throw FormatError("\"n\" too large");
  auto tests = item_lists(doc["tests"], "tests");
  const std::size_t m = tests.size();

  std::optional<Instance> inst;
  try {
    if (doc.contains("groups"))
      inst.emplace(static_cast<std::size_t>(n), item_lists(doc["groups"], "groups"), std::move(tests));
    else
      inst.emplace(static_cast<std::size_t>(n), std::move(tests));
    if (doc.contains("test_names")) inst->set_test_names(string_list(doc["test_names"], "test_names"));
    if (doc.contains("item_names")) inst->set_item_names(string_list(doc["item_names"], "item_names"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }

  LabeledInstance li(std::move(*inst));
  if (doc.contains("labels")) {
    const auto& labels = doc["labels"];
    if (!labels.is_object()) throw FormatError("\"labels\" must be an object");
    if (labels.contains("generator")) {
      if (!labels["generator"].is_string()) throw FormatError("labels.generator must be a string");
      li.generator = labels["generator"].get<std::string>();
    }
    if (labels.contains("params")) {
      if (!labels["params"].is_object()) throw FormatError("labels.params must be an object");
      for (const auto& [k, v] : labels["params"].items()) {
        if (!v.is_number_integer()) throw FormatError("labels.params values must be integers");
        li.params[k] = v.get<std::int64_t>();
      }
    }
    if (labels.contains("optimal_known")) {
      if (!labels["optimal_known"].is_boolean()) throw FormatError("labels.optimal_known must be a boolean");
      li.optimal_known = labels["optimal_known"].get<bool>();
    }
    if (labels.contains("tests")) {
      if (!labels["tests"].is_array()) throw FormatError("labels.tests must be an array");
      for (const auto& l : labels["tests"]) li.labels.push_back(label_from_json(l));
      if (!li.labels.empty() && li.labels.size() != m)
        throw FormatError("labels.tests has " + std::to_string(li.labels.size()) + " entries for " +
                          std::to_string(m) + " tests");
    }
  }
  if (doc.contains("planted_optimal"))
    li.planted_optimal = index_list<std::size_t>(doc["planted_optimal"], "planted_optimal", m);
  if (doc.contains("adversarial")) li.adversarial = index_list<std::size_t>(doc["adversarial"], "adversarial", m);
  return li;
}

std::string instance_to_matrix(const Instance& instance) {
  if (!instance.single_group()) throw FormatError("matrix format cannot express grouped instances");
  const std::size_t n = instance.item_count(), m = instance.test_count();
  std::string out = std::to_string(n) + " " + std::to_string(m) + "\n";
  out.reserve(out.size() + m * (n + 1));
  for (std::size_t k = 0; k < m; ++k) {
    std::string row(n, '0');
    for (Item i : instance.members(k)) row[i] = '1';
    out += row;
    out += '\n';
  }
  return out;
}

Instance instance_from_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("matrix: empty file");
  std::istringstream header(line);
  long long n = -1, m = -1;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0)
    throw FormatError("matrix: first line must be \"n m\"");
  if (n > static_cast<long long>(std::numeric_limits<Item>::max())) throw FormatError("matrix: n too large");
  std::vector<std::vector<Item>> tests(static_cast<std::size_t>(m));
  for (long long r = 0; r < m; ++r) {
    if (!std::getline(in, line)) throw FormatError("matrix: expected " + std::to_string(m) + " rows");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<long long>(line.size()) != n)
      throw FormatError("matrix: row " + std::to_string(r + 1) + " has " + std::to_string(line.size()) +
                        " characters, expected " + std::to_string(n));
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (line[c] == '1')
        tests[static_cast<std::size_t>(r)].push_back(static_cast<Item>(c));
      else if (line[c] != '0')
        throw FormatError("matrix: row " + std::to_string(r + 1) + " has a character other than 0/1");
    }
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw FormatError("matrix: trailing data after rows");
  return Instance(static_cast<std::size_t>(n), std::move(tests));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw FormatError("cannot read " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw FormatError("cannot write " + path.string());
}

LabeledInstance load_instance(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (path.extension() == ".json") {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
    return instance_from_json(doc);
  }
  return LabeledInstance(instance_from_matrix(text));
}

void save_instance(const std::filesystem::path& path, const LabeledInstance& li) {
  if (path.extension() == ".json")
    write_text(path, dump(instance_to_json(li)));
  else
    write_text(path, instance_to_matrix(li.instance));
}

std::string dump(const Json& doc) { return doc.dump() + "\n"; }

std::string fingerprint(const LabeledInstance& li) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump(instance_to_json(li))) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace testset::cli
