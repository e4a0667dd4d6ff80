#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fcolor/budget.hpp"

namespace fcolor {

class FoldColoring;

using VertexBits = boost::dynamic_bitset<>;

/// Undirected simple graph over uniquely labeled vertices. Immutable once built.
class Graph {
 public:
  Graph() = default;
  /// Throws InvalidInput on duplicate labels, self-loops or unknown endpoints.
  Graph(std::vector<std::string> labels,
        const std::vector<std::pair<std::string, std::string>>& edges);
  Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  /// Throws InvalidInput for an unknown label.
  int index_of(const std::string& label) const;
  std::optional<int> find(const std::string& label) const;

  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }
  const VertexBits& row(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::vector<int> neighbors(int v) const;
  std::size_t degree(int v) const { return adj_[static_cast<std::size_t>(v)].count(); }
  std::size_t edge_count() const { return edge_count_; }
  /// All edges (u < v) in lexicographic index order.
  std::vector<std::pair<int, int>> edges() const;

  /// Adjacency as 64-bit masks; only valid when size() <= 64.
  std::vector<std::uint64_t> adjacency_masks() const;

 private:
  friend Graph and_power(const Graph& g, unsigned n, const Budget& budget);
  void index_labels();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<VertexBits> adj_;
  std::size_t edge_count_ = 0;
};

/// Independent sets (as sorted vertex index lists) plus, per vertex, the
/// indices of the sets that contain it.
struct IndependentSetFamily {
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<int>> containing;
  bool maximal_only = false;
};

/// AND power: vertices are n-tuples (lexicographic, labels joined by ","),
/// two distinct tuples adjacent iff some coordinate pair is an edge of g.
Graph and_power(const Graph& g, unsigned n, const Budget& budget = {});

/// Nonempty independent sets (or only the inclusion-maximal ones), ordered
/// by size then lexicographically.
IndependentSetFamily enumerate_independent_sets(const Graph& g, bool maximal_only,
                                                const Budget& budget = {});

bool is_independent(const Graph& g, const std::vector<std::string>& labels);
bool is_independent(const Graph& g, const std::vector<int>& vertices);

/// Graphviz text. A coloring, when given, must be valid for g.
std::string export_dot(const Graph& g, const FoldColoring* coloring = nullptr);

}  // namespace fcolor
