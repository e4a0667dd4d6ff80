#include "fcolor/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "fcolor/coloring.hpp"
#include "fcolor/error.hpp"

namespace fcolor {

void Graph::index_labels() {
  index_.clear();
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
      throw InvalidInput("graph: duplicate vertex label \"" + labels_[i] + "\"");
}

Graph::Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges)
    : labels_(std::move(labels)) {
  index_labels();
  const std::size_t n = labels_.size();
  adj_.assign(n, VertexBits(n));
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw InvalidInput("graph: edge endpoint out of range");
    if (u == v) throw InvalidInput("graph: self-loop at \"" + labels_[static_cast<std::size_t>(u)] + "\"");
    if (!adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) ++edge_count_;
    adj_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
    adj_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
  }
}

Graph::Graph(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& edges)
    : labels_(std::move(labels)) {
  index_labels();
  const std::size_t n = labels_.size();
  adj_.assign(n, VertexBits(n));
  for (const auto& [a, b] : edges) {
    auto u = static_cast<std::size_t>(index_of(a));
    auto v = static_cast<std::size_t>(index_of(b));
    if (u == v) throw InvalidInput("graph: self-loop at \"" + a + "\"");
    if (!adj_[u][v]) ++edge_count_;
    adj_[u].set(v);
    adj_[v].set(u);
  }
}

int Graph::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InvalidInput("graph: unknown vertex \"" + label + "\"");
  return it->second;
}

std::optional<int> Graph::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  const auto& r = row(v);
  for (auto i = r.find_first(); i != VertexBits::npos; i = r.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < size(); ++u)
    for (auto v = adj_[u].find_next(u); v != VertexBits::npos; v = adj_[u].find_next(v))
      out.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return out;
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
  if (size() > 64) throw BudgetExceeded("graph: 64-bit masks need at most 64 vertices, have " + std::to_string(size()));
  std::vector<std::uint64_t> masks(size(), 0);
  for (std::size_t u = 0; u < size(); ++u)
    for (auto v = adj_[u].find_first(); v != VertexBits::npos; v = adj_[u].find_next(v))
      masks[u] |= std::uint64_t{1} << v;
  return masks;
}

Graph and_power(const Graph& g, unsigned n, const Budget& budget) {
  if (n == 0) throw InvalidInput("and_power: n must be at least 1");
  const std::size_t k = g.size();
  std::size_t count = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (k != 0 && count > budget.power_vertices / k)
      throw BudgetExceeded("and_power: " + std::to_string(k) + "^" + std::to_string(n) +
                           " vertices exceeds the vertex budget of " + std::to_string(budget.power_vertices));
    count *= k;
  }
  if (count > budget.power_vertices)
    throw BudgetExceeded("and_power: " + std::to_string(count) + " vertices exceeds the vertex budget of " +
                         std::to_string(budget.power_vertices));
  if (n == 1) return g;

  // Tuple t has digits t_0..t_{n-1} (most significant first).
  std::vector<std::vector<int>> digits(count, std::vector<int>(n));
  std::vector<std::string> labels(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t rest = t;
    for (unsigned i = n; i-- > 0;) {
      digits[t][i] = static_cast<int>(rest % k);
      rest /= k;
    }
    std::string label;
    for (unsigned i = 0; i < n; ++i) {
      if (i) label += ',';
      label += g.label(digits[t][i]);
    }
    labels[t] = std::move(label);
  }

  Graph out;
  out.labels_ = std::move(labels);
  out.index_labels();

  // Build G^m from G^(m-1) x G: (a,x) ~ (b,y) iff a ~ b in G^(m-1) or x ~ y in G.
  std::vector<VertexBits> prev;
  prev.reserve(k);
  for (std::size_t v = 0; v < k; ++v) prev.push_back(g.row(static_cast<int>(v)));
  std::size_t prev_count = k;
  for (unsigned m = 2; m <= n; ++m) {
    const std::size_t cur_count = prev_count * k;
    std::vector<VertexBits> cur(cur_count, VertexBits(cur_count));
    for (std::size_t a = 0; a < prev_count; ++a) {
      for (std::size_t x = 0; x < k; ++x) {
        VertexBits& row = cur[a * k + x];
        const VertexBits& gx = g.row(static_cast<int>(x));
        for (std::size_t b = 0; b < prev_count; ++b) {
          if (prev[a][b]) {
            for (std::size_t y = 0; y < k; ++y) row.set(b * k + y);
          } else {
            for (auto y = gx.find_first(); y != VertexBits::npos; y = gx.find_next(y)) row.set(b * k + y);
          }
        }
      }
    }
    prev = std::move(cur);
    prev_count = cur_count;
  }
  out.adj_ = std::move(prev);
  std::size_t degree_sum = 0;
  for (const auto& row : out.adj_) degree_sum += row.count();
  out.edge_count_ = degree_sum / 2;
  return out;
}

namespace {

bool set_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void check_count(std::size_t count, const Budget& budget) {
  if (count > budget.independent_sets)
    throw BudgetExceeded("independent sets: more than " + std::to_string(budget.independent_sets) +
                         " sets (enumeration budget)");
}

void enumerate_all(const std::vector<std::uint64_t>& adj, int next, std::uint64_t candidates,
                   std::vector<int>& current, std::vector<std::vector<int>>& out, const Budget& budget) {
  const int n = static_cast<int>(adj.size());
  for (int v = next; v < n; ++v) {
    if (!(candidates >> v & 1U)) continue;
    current.push_back(v);
    out.push_back(current);
    check_count(out.size(), budget);
    enumerate_all(adj, v + 1, candidates & ~adj[static_cast<std::size_t>(v)], current, out, budget);
    current.pop_back();
  }
}

// Bron-Kerbosch with pivoting on the complement graph: maximal cliques of the
// complement are the maximal independent sets.
void bron_kerbosch(const std::vector<VertexBits>& non_adj, VertexBits& r, VertexBits p, VertexBits x,
                   std::vector<std::vector<int>>& out, const Budget& budget) {
  if (p.none() && x.none()) {
    std::vector<int> set;
    for (auto v = r.find_first(); v != VertexBits::npos; v = r.find_next(v)) set.push_back(static_cast<int>(v));
    out.push_back(std::move(set));
    check_count(out.size(), budget);
    return;
  }
  VertexBits px = p | x;
  std::size_t pivot = px.find_first();
  std::size_t best = 0;
  for (auto u = px.find_first(); u != VertexBits::npos; u = px.find_next(u)) {
    std::size_t c = (p & non_adj[u]).count();
    if (c > best || pivot == VertexBits::npos) {
      best = c;
      pivot = u;
    }
  }
  VertexBits candidates = p - non_adj[pivot];
  for (auto v = candidates.find_first(); v != VertexBits::npos; v = candidates.find_next(v)) {
    r.set(v);
    bron_kerbosch(non_adj, r, p & non_adj[v], x & non_adj[v], out, budget);
    r.reset(v);
    p.reset(v);
    x.set(v);
  }
}

}  // namespace

IndependentSetFamily enumerate_independent_sets(const Graph& g, bool maximal_only, const Budget& budget) {
  const std::size_t n = g.size();
  IndependentSetFamily family;
  family.maximal_only = maximal_only;

  if (maximal_only) {
    if (n > budget.maximal_sets_vertices)
      throw BudgetExceeded("maximal independent sets: " + std::to_string(n) + " vertices exceeds the budget of " +
                           std::to_string(budget.maximal_sets_vertices));
    if (n > 0) {
      std::vector<VertexBits> non_adj(n);
      for (std::size_t v = 0; v < n; ++v) {
        non_adj[v] = ~g.row(static_cast<int>(v));
        non_adj[v].reset(v);
      }
      VertexBits r(n), p(n), x(n);
      p.set();
      bron_kerbosch(non_adj, r, p, x, family.sets, budget);
    }
  } else {
    if (n > budget.all_sets_vertices || n > 64)
      throw BudgetExceeded("independent sets: " + std::to_string(n) + " vertices exceeds the budget of " +
                           std::to_string(std::min<std::size_t>(budget.all_sets_vertices, 64)));
    if (n > 0) {
      auto adj = g.adjacency_masks();
      std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
      std::vector<int> current;
      enumerate_all(adj, 0, all, current, family.sets, budget);
    }
  }

  std::sort(family.sets.begin(), family.sets.end(), set_less);
  family.containing.assign(n, {});
  for (std::size_t s = 0; s < family.sets.size(); ++s)
    for (int v : family.sets[s]) family.containing[static_cast<std::size_t>(v)].push_back(static_cast<int>(s));
  return family;
}

bool is_independent(const Graph& g, const std::vector<int>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

bool is_independent(const Graph& g, const std::vector<std::string>& labels) {
  std::vector<int> vertices;
  vertices.reserve(labels.size());
  for (const auto& l : labels) vertices.push_back(g.index_of(l));
  return is_independent(g, vertices);
}

namespace {

const char* const kPalette[] = {"blue",   "red",       "green3",     "magenta",   "orange",
                                "cyan3",  "gold",      "darkgreen",  "purple",    "brown",
                                "pink",   "gray50",    "navy",       "olivedrab", "salmon",
                                "turquoise", "orchid", "khaki3",     "steelblue", "tomato"};

std::string palette_color(int id) {
  constexpr int kNamed = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));
  if (id < kNamed) return kPalette[id];
  // Golden-ratio hue walk past the named colors.
  double h = static_cast<double>(id - kNamed) * 0.618033988749895;
  h -= static_cast<long long>(h);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f 0.650 0.900", h);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const Graph& g, const FoldColoring* coloring) {
  if (coloring) coloring->validate(g);
  std::ostringstream os;
  os << "graph G {\n";
  os << "  node [shape=circle];\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    os << "  " << quote(g.label(static_cast<int>(v)));
    if (coloring) {
      const auto& colors = coloring->colors_of(static_cast<int>(v));
      std::string fill;
      for (std::size_t i = 0; i < colors.size(); ++i) {
        if (i) fill += ':';
        fill += palette_color(colors[i]);
      }
      os << " [style=" << (colors.size() > 1 ? "wedged" : "filled") << ", fillcolor=" << quote(fill)
         << ", xlabel=" << quote(coloring->set_label(static_cast<int>(v))) << "]";
    }
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  " << quote(g.label(u)) << " -- " << quote(g.label(v)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace fcolor
