#pragma once

#include <json.hpp>

#include "fcolor/codec.hpp"
#include "fcolor/coloring.hpp"
#include "fcolor/graph.hpp"
#include "fcolor/lp.hpp"
#include "fcolor/rates.hpp"

namespace fcolor {

inline constexpr const char* kResultsSchema = "fcolor/1";

/// Insertion-ordered JSON.
using Json = nlohmann::ordered_json;

/// Results documents. Every field is derived from the library objects; the
/// CLI tables are rendered from these and nothing else.
Json to_json(const Graph& g);
Json to_json(const FoldColoring& c, const Graph& g);
Json to_json(const Pmf& p);
Json to_json(const CoveringProgram& p);
Json to_json(const LpSolution& s, const CoveringProgram& p);
Json to_json(const FractionalSolution& s, const Graph& g);
Json to_json(const RateReport& r, const Graph* g = nullptr);
Json to_json(const FractionalRateReport& r, const Graph* g = nullptr);
Json to_json(const GapReport& r, const Graph* g = nullptr);
Json to_json(const MonotonicityTable& t);
/// Colorings without a graph: assignment is a list in vertex order.
Json to_json(const FoldColoring& c);
Json to_json(const Codebook& c);
Json to_json(const ZeroErrorReport& r);
Json to_json(const DecodeResult& r);

/// Reads {"b", "a", "assignment": {label: [ids]}} against g's vertex labels.
FoldColoring coloring_from_json(const Json& j, const Graph& g);

}  // namespace fcolor
