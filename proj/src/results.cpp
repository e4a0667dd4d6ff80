#include "fcolor/results.hpp"

#include <cmath>

#include "fcolor/error.hpp"

namespace fcolor {
namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json rational(const Rational& r) { return {{"exact", to_string(r)}, {"value", to_double(r)}}; }

std::vector<std::string> labels_of(const Graph& g, const std::vector<int>& vertices) {
  std::vector<std::string> out;
  for (int v : vertices) out.push_back(g.label(v));
  return out;
}

}  // namespace

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
  return {{"vertex_count", g.size()}, {"edge_count", g.edge_count()}, {"vertices", g.labels()}, {"edges", std::move(edges)}};
}

Json to_json(const FoldColoring& c, const Graph& g) {
  Json assignment = Json::object();
  for (std::size_t v = 0; v < c.vertex_count(); ++v) assignment[g.label(static_cast<int>(v))] = c.colors_of(static_cast<int>(v));
  return {{"b", c.b()}, {"a", c.a()}, {"assignment", std::move(assignment)}};
}

Json to_json(const FoldColoring& c) { return {{"b", c.b()}, {"a", c.a()}, {"assignment", c.assignment()}}; }

Json to_json(const Pmf& p) {
  Json outcomes = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    outcomes.push_back({{"label", p.outcomes()[i]}, {"prob", to_string(p.probs()[i])}, {"value", to_double(p.probs()[i])}});
  return {{"outcomes", std::move(outcomes)}, {"entropy_bits", shannon_entropy(p)}};
}

Json to_json(const CoveringProgram& p) {
  Json columns = Json::array();
  for (std::size_t j = 0; j < p.columns(); ++j) {
    std::vector<std::string> rows;
    for (int r : p.column_rows[j]) rows.push_back(p.row_labels[static_cast<std::size_t>(r)]);
    columns.push_back({{"label", p.column_labels[j]}, {"rows", std::move(rows)}});
  }
  return {{"objective", "minimize sum of column weights"},
          {"demand", to_string(p.demand)},
          {"rows", p.row_labels},
          {"columns", std::move(columns)}};
}

Json to_json(const LpSolution& s, const CoveringProgram& p) {
  Json weights = Json::array();
  for (std::size_t j = 0; j < s.weights.size() && j < p.columns(); ++j)
    if (s.weights[j] != 0) weights.push_back({{"column", p.column_labels[j]}, {"weight", to_string(s.weights[j])}});
  Json out = {{"status", to_string(s.status)}};
  if (s.status == LpStatus::kOptimal) out["optimum"] = rational(s.optimum);
  out["weights"] = std::move(weights);
  out["pivots"] = s.pivots;
  out["nodes"] = s.nodes;
  return out;
}

Json to_json(const FractionalSolution& s, const Graph& g) {
  Json weights = Json::array();
  for (std::size_t j = 0; j < s.sets.size(); ++j)
    if (s.weights[j] != 0) weights.push_back({{"set", labels_of(g, s.sets[j])}, {"weight", to_string(s.weights[j])}});
  Json chi_b = Json::array();
  for (const auto& [b, a] : s.chi_b_table) chi_b.push_back({{"b", b}, {"chi_b", a}});
  return {{"chi_f", rational(s.chi_f)},
          {"b_star", s.b_star ? Json(*s.b_star) : Json(nullptr)},
          {"b_search_bound", s.b_search_bound},
          {"chi_b", std::move(chi_b)},
          {"witness_denominator", to_string(s.witness_denominator)},
          {"weights", std::move(weights)}};
}

Json to_json(const RateReport& r, const Graph* g) {
  return {{"n", r.n},
          {"b", r.b},
          {"a", r.a},
          {"colors_used", r.colors_used},
          {"entropy_bits", r.entropy_bits},
          {"rate", r.rate},
          {"rate_lower", r.rate_lower},
          {"conditional_rate", r.conditional_rate},
          {"optimal", r.optimal},
          {"coloring", g ? to_json(r.witness, *g) : to_json(r.witness)}};
}

Json to_json(const FractionalRateReport& r, const Graph* g) {
  Json per_b = Json::array();
  for (const auto& x : r.per_b) per_b.push_back(to_json(x, g));
  return {{"n", r.n},
          {"b_max", r.b_max},
          {"best_b", r.best_report().b},
          {"rate", r.rate()},
          {"rate_lower", finite_or_null(r.rate_lower())},
          {"optimal", r.optimal()},
          {"failures", r.failures},
          {"per_b", std::move(per_b)}};
}

Json to_json(const GapReport& r, const Graph* g) {
  return {{"n", r.n},
          {"b_max", r.b_max},
          {"exact", r.exact},
          {"ig", r.ig},
          {"ig_lower", r.ig_lower},
          {"ig_upper", finite_or_null(r.ig_upper)},
          {"chi_f_base", rational(r.chi_f_base)},
          {"b_star_n", r.b_star_n ? Json(*r.b_star_n) : Json(nullptr)},
          {"conjecture_lower_bound", r.conjecture_lower_bound ? Json(*r.conjecture_lower_bound) : Json(nullptr)},
          {"traditional", to_json(r.traditional, g)},
          {"fractional", to_json(r.fractional, g)}};
}

Json to_json(const MonotonicityTable& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json j = {{"n", row.n}};
    if (row.gap) j["gap"] = to_json(*row.gap);
    else j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  return {{"rows", std::move(rows)}, {"inversions", t.inversions}};
}

Json to_json(const Codebook& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries()) entries.push_back({{"label", e.label}, {"bits", e.bits}, {"prob", to_string(e.prob)}});
  return {{"average_length", rational(c.average_length())}, {"kraft_sum", rational(kraft_sum(c))}, {"entries", std::move(entries)}};
}

Json to_json(const ZeroErrorReport& r) {
  return {{"ok", r.ok},
          {"cases", r.cases},
          {"mismatches", r.mismatches},
          {"bits_total", r.bits_total},
          {"empirical_bits_per_outcome", r.empirical_bits_per_outcome},
          {"model_bits_per_outcome", rational(r.model_bits_per_outcome)},
          {"counterexample", r.counterexample.empty() ? Json(nullptr) : Json(r.counterexample)}};
}

Json to_json(const DecodeResult& r) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks) {
    Json resolved = Json::array();
    for (const auto& x : b.resolved) resolved.push_back(x ? Json(*x) : Json(nullptr));
    blocks.push_back({{"label", b.label}, {"colors", b.colors}, {"outcomes", b.outcomes}, {"resolved", std::move(resolved)}});
  }
  return {{"blocks", std::move(blocks)}, {"outcomes", r.flat_outcomes()}};
}

FoldColoring coloring_from_json(const Json& j, const Graph& g) {
  try {
    const int b = j.at("b").get<int>();
    const int a = j.at("a").get<int>();
    const Json& assignment = j.at("assignment");
    std::vector<std::vector<int>> sets(g.size());
    if (assignment.is_array()) {
      if (assignment.size() != g.size())
        throw InvalidInput("coloring: assignment lists " + std::to_string(assignment.size()) + " vertices, graph has " +
                           std::to_string(g.size()));
      for (std::size_t v = 0; v < g.size(); ++v) sets[v] = assignment[v].get<std::vector<int>>();
    } else {
      std::vector<bool> seen(g.size(), false);
      for (const auto& [label, colors] : assignment.items()) {
        auto v = g.find(label);
        if (!v) throw InvalidInput("coloring: unknown vertex \"" + label + "\"");
        sets[static_cast<std::size_t>(*v)] = colors.get<std::vector<int>>();
        seen[static_cast<std::size_t>(*v)] = true;
      }
      for (std::size_t v = 0; v < g.size(); ++v)
        if (!seen[v]) throw InvalidInput("coloring: vertex \"" + g.label(static_cast<int>(v)) + "\" has no colors");
    }
    FoldColoring c(b, a, std::move(sets));
    c.validate(g);
    return c;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("coloring: ") + e.what());
  }
}

}  // namespace fcolor
