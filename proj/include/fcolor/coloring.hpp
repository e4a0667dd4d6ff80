#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fcolor/budget.hpp"
#include "fcolor/graph.hpp"
#include "fcolor/lp.hpp"
#include "fcolor/probability.hpp"
#include "fcolor/rational.hpp"

namespace fcolor {

/// An a:b coloring: every vertex holds a sorted set of b color ids in [0, a),
/// adjacent vertices hold disjoint sets. b == 1 is an ordinary coloring.
class FoldColoring {
 public:
  FoldColoring() = default;
  /// Checks the shape only (set sizes, id range, no repeats). Use
  /// validate() against a graph for the adjacency condition.
  FoldColoring(int b, int a, std::vector<std::vector<int>> assignment);

  int b() const { return b_; }
  int a() const { return a_; }
  std::size_t vertex_count() const { return assignment_.size(); }
  const std::vector<std::vector<int>>& assignment() const { return assignment_; }
  const std::vector<int>& colors_of(int v) const { return assignment_[static_cast<std::size_t>(v)]; }

  /// Color id -> vertices holding it (the color class), sorted.
  std::vector<std::vector<int>> class_map() const;

  /// Throws InvalidInput naming the first violated condition.
  void validate(const Graph& g) const;
  bool is_valid(const Graph& g) const;

  /// "{0,3}" style label of a vertex's color set.
  std::string set_label(int v) const;

 private:
  int b_ = 1;
  int a_ = 0;
  std::vector<std::vector<int>> assignment_;
};

std::string color_set_label(const std::vector<int>& colors);
std::vector<int> parse_color_set_label(const std::string& label);

/// Exact chromatic number by DSATUR branch-and-bound.
int chromatic_number(const Graph& g, const Budget& budget = {});
/// Same quantity through solve_ilp on the maximal independent set cover.
int chromatic_number_ilp(const Graph& g, const Budget& budget = {});

/// Covering program over the maximal independent sets of g with the given demand.
CoveringProgram independent_set_program(const Graph& g, const Rational& demand,
                                        const Budget& budget = {});

struct FoldResult {
  int a = 0;
  FoldColoring coloring;
};

/// Least a admitting an a:b coloring, with a witness built from the ILP
/// column multiset (one color per selected set, each vertex keeps the b
/// lowest color ids whose sets contain it).
FoldResult bfold_chromatic_number(const Graph& g, int b, const Budget& budget = {});

struct FractionalSolution {
  Rational chi_f;
  std::vector<std::vector<int>> sets;   // maximal independent sets (LP columns)
  std::vector<Rational> weights;        // LP witness, one per set
  std::optional<int> b_star;            // least b with chi_b / b == chi_f
  std::map<int, int> chi_b_table;       // b = 1, then each b with b chi_f integral, up to b*
  int b_search_bound = 0;
  Rational witness_denominator;         // lcm of the witness weight denominators
};

FractionalSolution fractional_chromatic_number(const Graph& g, int b_search_bound,
                                               const Budget& budget = {});

struct EntropyColoringOptions {
  /// Optional upper bound on the optimum; must be achievable if given.
  std::optional<double> initial_upper_bound;
  /// Valid coloring used as the starting incumbent (its b must match and its
  /// a must not exceed the requested a). Computed internally when absent.
  std::optional<FoldColoring> seed;
};

struct EntropyColoring {
  FoldColoring coloring;
  double entropy = 0.0;        // entropy of the color-set variable, bits, not divided by b
  double lower_bound = 0.0;    // proven lower bound (== entropy when optimal)
  bool optimal = false;
  std::uint64_t nodes = 0;
};

/// Minimum entropy of the color set C = assignment(V) over all valid a:b
/// colorings of g, V ~ vertex_pmf (outcomes in the graph's vertex order).
/// Throws Infeasible when no a:b coloring exists. Beyond the exact budget
/// returns the best coloring found with optimal == false.
EntropyColoring min_entropy_coloring(const Graph& g, const Pmf& vertex_pmf, int b, int a,
                                     const Budget& budget = {},
                                     const EntropyColoringOptions& options = {});

/// Pushforward of vertex_pmf through the coloring: outcomes are color-set
/// labels, in order of first appearance by vertex index; zero-mass sets omitted.
Pmf coloring_distribution(const FoldColoring& c, const Pmf& vertex_pmf);

}  // namespace fcolor
