// Exact minimum-entropy a:b coloring by branch-and-bound.
//
// Vertices are placed in decreasing-probability order. Each one either joins
// an existing group (vertices sharing one color set) or opens a new color
// set; colors are introduced in first-use order so relabelings of the
// palette are explored once. Two bounds prune the tree:
//   * entropy: every vertex pays -log2 of the largest weight its final group
//     can still reach (current members plus a maximum-weight independent set
//     of the vertices still able to join);
//   * capacity: color classes must absorb b incidences per vertex, and each
//     class can grow by at most an independent set of its candidates.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "fcolor/coloring.hpp"
#include "fcolor/error.hpp"

namespace fcolor {
namespace {

using Mask = std::uint64_t;

constexpr double kEps = 1e-12;

inline Mask bit(int v) { return Mask{1} << v; }

double entropy_term(double p, double w) { return p > 0 ? -p * std::log2(w) : 0.0; }

class IndependentSetOracle {
 public:
  IndependentSetOracle(const std::vector<Mask>& adj, const std::vector<double>& weight)
      : adj_(adj), weight_(weight) {}

  double max_weight(Mask m) {
    if (m == 0) return 0.0;
    if (auto it = weight_memo_.find(m); it != weight_memo_.end()) return it->second;
    double result = 0.0;
    int pick = -1;
    int pick_deg = -1;
    Mask isolated = 0;
    for (Mask rest = m; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      int deg = std::popcount(adj_[static_cast<std::size_t>(v)] & m);
      if (deg == 0) isolated |= bit(v);
      else if (deg > pick_deg) {
        pick = v;
        pick_deg = deg;
      }
    }
    for (Mask rest = isolated; rest; rest &= rest - 1) result += weight_[static_cast<std::size_t>(std::countr_zero(rest))];
    if (pick >= 0) {
      Mask remaining = m & ~isolated;
      double take = weight_[static_cast<std::size_t>(pick)] +
                    max_weight(remaining & ~adj_[static_cast<std::size_t>(pick)] & ~bit(pick));
      double skip = max_weight(remaining & ~bit(pick));
      result += std::max(take, skip);
    }
    remember(weight_memo_, m, result);
    return result;
  }

  int max_size(Mask m) {
    if (m == 0) return 0;
    if (auto it = size_memo_.find(m); it != size_memo_.end()) return it->second;
    int result = 0;
    int pick = -1;
    int pick_deg = -1;
    Mask isolated = 0;
    for (Mask rest = m; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      int deg = std::popcount(adj_[static_cast<std::size_t>(v)] & m);
      if (deg == 0) isolated |= bit(v);
      else if (deg > pick_deg) {
        pick = v;
        pick_deg = deg;
      }
    }
    result = std::popcount(isolated);
    if (pick >= 0) {
      Mask remaining = m & ~isolated;
      int take = 1 + max_size(remaining & ~adj_[static_cast<std::size_t>(pick)] & ~bit(pick));
      int skip = max_size(remaining & ~bit(pick));
      result += std::max(take, skip);
    }
    remember(size_memo_, m, result);
    return result;
  }

 private:
  template <typename T>
  static void remember(std::unordered_map<Mask, T>& memo, Mask m, T value) {
    if (memo.size() > 4'000'000) memo.clear();
    memo.emplace(m, value);
  }

  const std::vector<Mask>& adj_;
  const std::vector<double>& weight_;
  std::unordered_map<Mask, double> weight_memo_;
  std::unordered_map<Mask, int> size_memo_;
};

struct Group {
  Mask colors = 0;
  Mask members = 0;
  double weight = 0.0;
};

class Search {
 public:
  Search(const Graph& g, const std::vector<double>& p, int b, int a, std::uint64_t node_budget)
      : n_(static_cast<int>(g.size())),
        b_(b),
        a_(a),
        adj_(g.adjacency_masks()),
        p_(p),
        oracle_(adj_, p_),
        node_budget_(node_budget) {
    order_.resize(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) order_[static_cast<std::size_t>(v)] = v;
    std::stable_sort(order_.begin(), order_.end(), [&](int u, int v) { return p_[static_cast<std::size_t>(u)] > p_[static_cast<std::size_t>(v)]; });
    forbid_count_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(a_), 0);
    forbid_.assign(static_cast<std::size_t>(n_), 0);
    class_members_.assign(static_cast<std::size_t>(a_), 0);
    group_of_.assign(static_cast<std::size_t>(n_), -1);
    unassigned_ = n_ == 64 ? ~Mask{0} : bit(n_) - 1;
  }

  void set_upper_bound(double ub) { best_ = ub; }

  // Returns true when the tree was exhausted within the node budget.
  bool run() {
    const double root = bound();
    lower_stack_.push_back(root);
    bool complete = true;
    try {
      if (root < best_ - kEps) descend(0);
    } catch (const BudgetExceeded&) {
      complete = false;
    }
    if (complete) {
      lower_ = std::min(best_, root);
      if (found_) lower_ = best_;
    } else {
      lower_ = best_;
      for (double l : lower_stack_) lower_ = std::min(lower_, l);
    }
    return complete;
  }

  bool found() const { return found_; }
  double best() const { return best_; }
  double lower() const { return lower_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<Mask>& best_sets() const { return best_sets_; }

 private:
  struct Option {
    int group = -1;   // join this group, or
    Mask colors = 0;  // open a new group with these colors
    int new_colors = 0;
    double bound = 0.0;
  };

  // Entropy lower bound over all completions; +inf when a completion is
  // provably impossible.
  double bound() {
    const double inf = std::numeric_limits<double>::infinity();
    double lb = 0.0;

    // Capacity of the color classes, counted in vertex incidences.
    long needed = static_cast<long>(b_) * std::popcount(unassigned_);
    long room = 0;
    const int free_colors = a_ - used_;
    if (needed > 0) {
      for (int c = 0; c < used_ && room < needed; ++c) {
        Mask cand = 0;
        for (Mask rest = unassigned_; rest; rest &= rest - 1) {
          int u = std::countr_zero(rest);
          if (!(forbid_[static_cast<std::size_t>(u)] >> c & 1U)) cand |= bit(u);
        }
        room += oracle_.max_size(cand);
      }
      if (free_colors > 0 && room < needed) room += static_cast<long>(free_colors) * oracle_.max_size(unassigned_);
      if (room < needed) return inf;
    }

    std::vector<double> group_cap(groups_.size());
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
      const Group& g = groups_[gi];
      Mask joinable = 0;
      for (Mask rest = unassigned_; rest; rest &= rest - 1) {
        int u = std::countr_zero(rest);
        if ((forbid_[static_cast<std::size_t>(u)] & g.colors) == 0) joinable |= bit(u);
      }
      group_cap[gi] = g.weight + oracle_.max_weight(joinable);
      lb += entropy_term(g.weight, group_cap[gi]);
    }

    for (Mask rest = unassigned_; rest; rest &= rest - 1) {
      int u = std::countr_zero(rest);
      const auto uu = static_cast<std::size_t>(u);
      if (b_ > a_ - std::popcount(forbid_[uu])) return inf;
      if (p_[uu] <= 0) continue;
      double cap = p_[uu] + oracle_.max_weight(unassigned_ & ~adj_[uu] & ~bit(u));
      for (std::size_t gi = 0; gi < groups_.size(); ++gi)
        if ((forbid_[uu] & groups_[gi].colors) == 0) cap = std::max(cap, group_cap[gi]);
      lb += entropy_term(p_[uu], std::min(cap, 1.0));
    }
    return lb;
  }

  void place(int v, int group_index) {
    const auto vv = static_cast<std::size_t>(v);
    Group& g = groups_[static_cast<std::size_t>(group_index)];
    g.members |= bit(v);
    g.weight += p_[vv];
    group_of_[vv] = group_index;
    unassigned_ &= ~bit(v);
    for (Mask cs = g.colors; cs; cs &= cs - 1) {
      int c = std::countr_zero(cs);
      class_members_[static_cast<std::size_t>(c)] |= bit(v);
      for (Mask nb = adj_[vv]; nb; nb &= nb - 1) {
        int u = std::countr_zero(nb);
        auto& cnt = forbid_count_[static_cast<std::size_t>(u) * static_cast<std::size_t>(a_) + static_cast<std::size_t>(c)];
        if (cnt++ == 0) forbid_[static_cast<std::size_t>(u)] |= bit(c);
      }
    }
  }

  void unplace(int v) {
    const auto vv = static_cast<std::size_t>(v);
    Group& g = groups_[static_cast<std::size_t>(group_of_[vv])];
    for (Mask cs = g.colors; cs; cs &= cs - 1) {
      int c = std::countr_zero(cs);
      class_members_[static_cast<std::size_t>(c)] &= ~bit(v);
      for (Mask nb = adj_[vv]; nb; nb &= nb - 1) {
        int u = std::countr_zero(nb);
        auto& cnt = forbid_count_[static_cast<std::size_t>(u) * static_cast<std::size_t>(a_) + static_cast<std::size_t>(c)];
        if (--cnt == 0) forbid_[static_cast<std::size_t>(u)] &= ~bit(c);
      }
    }
    g.members &= ~bit(v);
    g.weight -= p_[vv];
    if (g.members == 0) g.weight = 0.0;
    group_of_[vv] = -1;
    unassigned_ |= bit(v);
  }

  // Applies an option for vertex v; returns the group index used.
  int apply(int v, const Option& o) {
    if (o.group >= 0) {
      place(v, o.group);
      return o.group;
    }
    groups_.push_back(Group{o.colors, 0, 0.0});
    used_ += o.new_colors;
    int gi = static_cast<int>(groups_.size()) - 1;
    place(v, gi);
    return gi;
  }

  void revert(int v, const Option& o) {
    unplace(v);
    if (o.group < 0) {
      groups_.pop_back();
      used_ -= o.new_colors;
    }
  }

  void new_set_options(int v, std::vector<Option>& out) {
    const Mask forbidden = forbid_[static_cast<std::size_t>(v)];
    std::vector<int> existing;
    for (int c = 0; c < used_; ++c)
      if (!(forbidden >> c & 1U)) existing.push_back(c);
    for (int fresh = 0; fresh <= b_; ++fresh) {
      if (used_ + fresh > a_) break;
      const int from_existing = b_ - fresh;
      if (from_existing > static_cast<int>(existing.size())) continue;
      Mask fresh_mask = 0;
      for (int i = 0; i < fresh; ++i) fresh_mask |= bit(used_ + i);
      // Combinations of existing colors in lexicographic order.
      std::vector<int> idx(static_cast<std::size_t>(from_existing));
      for (int i = 0; i < from_existing; ++i) idx[static_cast<std::size_t>(i)] = i;
      while (true) {
        Mask set = fresh_mask;
        for (int i : idx) set |= bit(existing[static_cast<std::size_t>(i)]);
        bool duplicate = false;
        for (const auto& g : groups_)
          if (g.members != 0 && g.colors == set) duplicate = true;
        if (!duplicate) out.push_back(Option{-1, set, fresh, 0.0});
        int i = from_existing - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == static_cast<int>(existing.size()) - from_existing + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < from_existing; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }

  void descend(std::size_t depth) {
    if (++nodes_ > node_budget_) throw BudgetExceeded("min_entropy_coloring: node budget");
    if (depth == order_.size()) {
      double h = 0.0;
      for (const auto& g : groups_)
        if (g.members != 0) h += entropy_term(g.weight, g.weight);
      if (h < best_ - kEps) {
        best_ = h;
        found_ = true;
        best_sets_.assign(static_cast<std::size_t>(n_), 0);
        for (int v = 0; v < n_; ++v)
          best_sets_[static_cast<std::size_t>(v)] = groups_[static_cast<std::size_t>(group_of_[static_cast<std::size_t>(v)])].colors;
      }
      return;
    }

    const int v = order_[depth];
    const Mask forbidden = forbid_[static_cast<std::size_t>(v)];
    std::vector<Option> options;
    for (std::size_t gi = 0; gi < groups_.size(); ++gi)
      if (groups_[gi].members != 0 && (groups_[gi].colors & forbidden) == 0)
        options.push_back(Option{static_cast<int>(gi), 0, 0, 0.0});
    new_set_options(v, options);

    for (auto& o : options) {
      apply(v, o);
      o.bound = bound();
      revert(v, o);
    }
    std::stable_sort(options.begin(), options.end(), [](const Option& x, const Option& y) { return x.bound < y.bound; });

    for (const auto& o : options) {
      if (o.bound >= best_ - kEps) break;
      apply(v, o);
      lower_stack_.push_back(o.bound);
      descend(depth + 1);
      lower_stack_.pop_back();
      revert(v, o);
    }
  }

  int n_;
  int b_;
  int a_;
  std::vector<Mask> adj_;
  std::vector<double> p_;
  IndependentSetOracle oracle_;
  std::uint64_t node_budget_;
  std::uint64_t nodes_ = 0;

  std::vector<int> order_;
  std::vector<std::uint8_t> forbid_count_;
  std::vector<Mask> forbid_;
  std::vector<Mask> class_members_;
  std::vector<Group> groups_;
  std::vector<int> group_of_;
  Mask unassigned_ = 0;
  int used_ = 0;

  double best_ = std::numeric_limits<double>::infinity();
  double lower_ = 0.0;
  bool found_ = false;
  std::vector<Mask> best_sets_;
  std::vector<double> lower_stack_;
};

double exact_entropy(const FoldColoring& c, const Pmf& pmf) { return shannon_entropy(coloring_distribution(c, pmf)); }

// Renumbers colors by first use in vertex order and drops unused ids, keeping a.
FoldColoring canonical_colors(const std::vector<std::vector<int>>& sets, int b, int a) {
  std::unordered_map<int, int> remap;
  std::vector<std::vector<int>> out(sets.size());
  for (std::size_t v = 0; v < sets.size(); ++v)
    for (int c : sets[v]) {
      auto [it, inserted] = remap.emplace(c, static_cast<int>(remap.size()));
      out[v].push_back(it->second);
    }
  return FoldColoring(b, a, std::move(out));
}

// Greedy b = 1 coloring: vertices by decreasing probability join the
// heaviest compatible class, else open one.
std::optional<FoldColoring> greedy_single(const Graph& g, const std::vector<double>& p, int a) {
  const std::size_t n = g.size();
  std::vector<int> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<int>(v);
  std::stable_sort(order.begin(), order.end(), [&](int u, int v) { return p[static_cast<std::size_t>(u)] > p[static_cast<std::size_t>(v)]; });
  std::vector<std::vector<int>> classes;
  std::vector<double> weight;
  std::vector<std::vector<int>> assignment(n);
  for (int v : order) {
    int pick = -1;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      bool ok = std::none_of(classes[c].begin(), classes[c].end(), [&](int u) { return g.adjacent(u, v); });
      if (ok && (pick < 0 || weight[c] > weight[static_cast<std::size_t>(pick)])) pick = static_cast<int>(c);
    }
    if (pick < 0) {
      if (static_cast<int>(classes.size()) >= a) return std::nullopt;
      classes.emplace_back();
      weight.push_back(0.0);
      pick = static_cast<int>(classes.size()) - 1;
    }
    classes[static_cast<std::size_t>(pick)].push_back(v);
    weight[static_cast<std::size_t>(pick)] += p[static_cast<std::size_t>(v)];
    assignment[static_cast<std::size_t>(v)] = {pick};
  }
  return canonical_colors(assignment, 1, a);
}

}  // namespace

EntropyColoring min_entropy_coloring(const Graph& g, const Pmf& vertex_pmf, int b, int a, const Budget& budget,
                                     const EntropyColoringOptions& options) {
  if (b < 1) throw InvalidInput("min_entropy_coloring: b must be at least 1");
  if (a < b && g.size() > 0) throw Infeasible("min_entropy_coloring: a = " + std::to_string(a) + " < b");
  if (vertex_pmf.size() != g.size())
    throw InvalidInput("min_entropy_coloring: pmf has " + std::to_string(vertex_pmf.size()) + " outcomes, graph has " +
                       std::to_string(g.size()) + " vertices");
  for (std::size_t v = 0; v < g.size(); ++v)
    if (vertex_pmf.outcomes()[v] != g.label(static_cast<int>(v)))
      throw InvalidInput("min_entropy_coloring: pmf outcome \"" + vertex_pmf.outcomes()[v] +
                         "\" does not match vertex \"" + g.label(static_cast<int>(v)) + "\"");

  EntropyColoring result;
  const std::size_t n = g.size();
  if (n == 0) {
    result.coloring = FoldColoring(b, a, {});
    result.optimal = true;
    return result;
  }

  // Feasibility and a starting incumbent.
  std::optional<FoldColoring> seed = options.seed;
  if (b == 1) {
    const int chi = chromatic_number(g, budget);
    if (a < chi)
      throw Infeasible("min_entropy_coloring: a = " + std::to_string(a) + " is below the chromatic number " +
                       std::to_string(chi));
  } else if (!seed) {
    auto fold = bfold_chromatic_number(g, b, budget);
    if (a < fold.a)
      throw Infeasible("min_entropy_coloring: a = " + std::to_string(a) + " is below the " + std::to_string(b) +
                       "-fold chromatic number " + std::to_string(fold.a));
    seed = fold.coloring;
  }
  if (seed) {
    if (seed->b() != b || seed->a() > a) throw InvalidInput("min_entropy_coloring: seed coloring has the wrong shape");
    seed->validate(g);
    seed = FoldColoring(b, a, seed->assignment());
  }

  std::vector<double> p(n);
  for (std::size_t v = 0; v < n; ++v) p[v] = vertex_pmf.probs()[v].get_d();

  if (b == 1) {
    if (auto greedy = greedy_single(g, p, std::min<int>(a, static_cast<int>(n)))) {
      greedy = FoldColoring(1, a, greedy->assignment());
      if (!seed || exact_entropy(*greedy, vertex_pmf) < exact_entropy(*seed, vertex_pmf)) seed = greedy;
    }
    if (!seed) {
      // Greedy can miss tight palettes; DSATUR-free fallback through the ILP witness.
      auto fold = bfold_chromatic_number(g, 1, budget);
      seed = FoldColoring(1, a, fold.coloring.assignment());
    }
  }

  const double seed_entropy = exact_entropy(*seed, vertex_pmf);
  result.coloring = *seed;
  result.entropy = seed_entropy;
  result.lower_bound = 0.0;
  result.optimal = false;

  const int a_eff = std::min<long>(a, static_cast<long>(n) * b);
  if (n > budget.entropy_vertices || n > 64 || a_eff > 64) return result;

  Search search(g, p, b, a_eff, budget.entropy_nodes);
  double ub = seed_entropy + 1e-9;
  if (options.initial_upper_bound) ub = std::min(ub, *options.initial_upper_bound + 1e-9);
  search.set_upper_bound(ub);
  const bool complete = search.run();
  result.nodes = search.nodes();

  if (search.found()) {
    std::vector<std::vector<int>> sets(n);
    for (std::size_t v = 0; v < n; ++v)
      for (Mask cs = search.best_sets()[v]; cs; cs &= cs - 1) sets[v].push_back(std::countr_zero(cs));
    FoldColoring found = canonical_colors(sets, b, a);
    found.validate(g);
    const double h = exact_entropy(found, vertex_pmf);
    if (h <= seed_entropy + 1e-9) {
      result.coloring = std::move(found);
      result.entropy = h;
    }
  }
  result.optimal = complete;
  result.lower_bound = complete ? result.entropy : std::min(result.entropy, std::max(0.0, search.lower()));
  return result;
}

}  // namespace fcolor
