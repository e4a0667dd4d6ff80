#include "fcolor/instance.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fcolor/error.hpp"
#include "fcolor/rational.hpp"

namespace fcolor {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw InvalidInput(std::string("missing field \"") + name + "\"");
  return *it;
}

std::string symbol_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw InvalidInput(where + ": symbols must be strings or integers");
}

std::vector<std::string> alphabet(const json& doc, const char* name) {
  const json& a = field(doc, name);
  if (!a.is_array() || a.empty()) throw InvalidInput(std::string(name) + ": expected a nonempty array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(symbol_text(a[i], std::string(name) + "[" + std::to_string(i) + "]"));
  return out;
}

Rational probability(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
  throw InvalidInput(where + ": expected a rational string or a number");
}

}  // namespace

SourceModel parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("instance must be a JSON object");

  auto x1 = alphabet(doc, "x1_alphabet");
  auto x2 = alphabet(doc, "x2_alphabet");

  const json& pmf = field(doc, "joint_pmf");
  if (!pmf.is_array()) throw InvalidInput("joint_pmf: expected an array of rows");
  std::vector<std::vector<Rational>> joint;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const std::string row_name = "joint_pmf[" + std::to_string(i) + "]";
    if (!pmf[i].is_array()) throw InvalidInput(row_name + ": expected an array");
    std::vector<Rational> row;
    for (std::size_t j = 0; j < pmf[i].size(); ++j)
      row.push_back(probability(pmf[i][j], row_name + "[" + std::to_string(j) + "]"));
    joint.push_back(std::move(row));
  }

  const json& fn = field(doc, "function");
  if (!fn.is_object()) throw InvalidInput("function: expected an object");
  const json& type = field(fn, "type");
  std::vector<std::vector<std::string>> table;
  if (type == "builtin") {
    const json& name = field(fn, "name");
    BuiltinFunction which;
    if (name == "sum") which = BuiltinFunction::kSum;
    else if (name == "product") which = BuiltinFunction::kProduct;
    else if (name == "identity") which = BuiltinFunction::kIdentity;
    else throw InvalidInput("function.name: unknown builtin " + name.dump() + " (expected sum, product or identity)");
    table = builtin_table(which, x1, x2);
  } else if (type == "table") {
    const json& values = field(fn, "values");
    if (!values.is_array()) throw InvalidInput("function.values: expected an array of rows");
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string row_name = "function.values[" + std::to_string(i) + "]";
      if (!values[i].is_array()) throw InvalidInput(row_name + ": expected an array");
      std::vector<std::string> row;
      for (std::size_t j = 0; j < values[i].size(); ++j)
        row.push_back(symbol_text(values[i][j], row_name + "[" + std::to_string(j) + "]"));
      table.push_back(std::move(row));
    }
  } else {
    throw InvalidInput("function.type: expected \"builtin\" or \"table\", got " + type.dump());
  }

  return SourceModel(std::move(x1), std::move(x2), std::move(joint), std::move(table));
}

SourceModel load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open instance file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string instance_to_json(const SourceModel& m) {
  json doc;
  doc["x1_alphabet"] = m.x1_alphabet();
  doc["x2_alphabet"] = m.x2_alphabet();
  json pmf = json::array();
  for (const auto& row : m.joint_pmf()) {
    json r = json::array();
    for (const auto& p : row) r.push_back(to_string(p));
    pmf.push_back(std::move(r));
  }
  doc["joint_pmf"] = std::move(pmf);
  doc["function"] = {{"type", "table"}, {"values", m.function_table()}};
  return doc.dump(2);
}

}  // namespace fcolor
