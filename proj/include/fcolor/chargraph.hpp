#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcolor/budget.hpp"
#include "fcolor/graph.hpp"
#include "fcolor/probability.hpp"

namespace fcolor {

/// Vertices = x1 alphabet; u ~ v iff some x2 has P(u,x2) > 0, P(v,x2) > 0
/// and f(u,x2) != f(v,x2).
Graph build_characteristic_graph(const SourceModel& m);

/// First x2 (alphabet order) witnessing the edge u ~ v, if any.
std::optional<std::string> confusable(const SourceModel& m, const std::string& u,
                                      const std::string& v);

/// Characteristic graph of length-n source blocks: and_power of the
/// single-letter graph.
Graph characteristic_power_graph(const SourceModel& m, unsigned n, const Budget& budget = {});

/// Distribution of X1^n over the vertices of characteristic_power_graph(m, n),
/// in the same vertex order.
Pmf block_pmf(const SourceModel& m, unsigned n, const Budget& budget = {});

/// Splits a tuple label "a,b,c" back into coordinate symbols.
std::vector<std::string> split_tuple_label(const std::string& label);
std::string join_tuple_label(const std::vector<std::string>& symbols);

}  // namespace fcolor
