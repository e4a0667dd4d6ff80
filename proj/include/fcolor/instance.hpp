#pragma once

#include <string>

#include "fcolor/probability.hpp"

namespace fcolor {

/// Instance documents are JSON:
///   {"x1_alphabet": [...], "x2_alphabet": [...],
///    "joint_pmf": [["1/10", "0.1", ...], ...],
///    "function": {"type": "builtin", "name": "sum"|"product"|"identity"}
///              | {"type": "table", "values": [[...], ...]}}
/// Symbols may be strings or integers. Errors name the offending field.
SourceModel parse_instance(const std::string& json_text);
SourceModel load_instance(const std::string& path);

std::string instance_to_json(const SourceModel& m);

}  // namespace fcolor
