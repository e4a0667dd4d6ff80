#include "fcolor/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fcolor/error.hpp"

namespace fcolor {

FoldColoring::FoldColoring(int b, int a, std::vector<std::vector<int>> assignment)
    : b_(b), a_(a), assignment_(std::move(assignment)) {
  if (b_ < 1) throw InvalidInput("coloring: b must be at least 1");
  if (a_ < 0) throw InvalidInput("coloring: a must be nonnegative");
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    auto& colors = assignment_[v];
    std::sort(colors.begin(), colors.end());
    if (colors.size() != static_cast<std::size_t>(b_))
      throw InvalidInput("coloring: vertex " + std::to_string(v) + " holds " + std::to_string(colors.size()) +
                         " colors, expected " + std::to_string(b_));
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (colors[i] < 0 || colors[i] >= a_)
        throw InvalidInput("coloring: vertex " + std::to_string(v) + " uses color " + std::to_string(colors[i]) +
                           " outside [0, " + std::to_string(a_) + ")");
      if (i > 0 && colors[i] == colors[i - 1])
        throw InvalidInput("coloring: vertex " + std::to_string(v) + " repeats color " + std::to_string(colors[i]));
    }
  }
}

std::vector<std::vector<int>> FoldColoring::class_map() const {
  std::vector<std::vector<int>> classes(static_cast<std::size_t>(a_));
  for (std::size_t v = 0; v < assignment_.size(); ++v)
    for (int c : assignment_[v]) classes[static_cast<std::size_t>(c)].push_back(static_cast<int>(v));
  return classes;
}

void FoldColoring::validate(const Graph& g) const {
  if (assignment_.size() != g.size())
    throw InvalidInput("coloring: covers " + std::to_string(assignment_.size()) + " vertices, graph has " +
                       std::to_string(g.size()));
  for (auto [u, v] : g.edges()) {
    const auto& cu = assignment_[static_cast<std::size_t>(u)];
    const auto& cv = assignment_[static_cast<std::size_t>(v)];
    std::vector<int> common;
    std::set_intersection(cu.begin(), cu.end(), cv.begin(), cv.end(), std::back_inserter(common));
    if (!common.empty())
      throw InvalidInput("coloring: adjacent vertices \"" + g.label(u) + "\" and \"" + g.label(v) +
                         "\" share color " + std::to_string(common.front()));
  }
}

bool FoldColoring::is_valid(const Graph& g) const {
  try {
    validate(g);
    return true;
  } catch (const InvalidInput&) {
    return false;
  }
}

std::string FoldColoring::set_label(int v) const { return color_set_label(colors_of(v)); }

std::string color_set_label(const std::vector<int>& colors) {
  std::string out = "{";
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(colors[i]);
  }
  return out + "}";
}

std::vector<int> parse_color_set_label(const std::string& label) {
  if (label.size() < 2 || label.front() != '{' || label.back() != '}')
    throw InvalidInput("malformed color-set label \"" + label + "\"");
  std::vector<int> out;
  std::string body = label.substr(1, label.size() - 2);
  std::size_t start = 0;
  while (start <= body.size() && !body.empty()) {
    auto comma = body.find(',', start);
    std::string item = body.substr(start, comma - start);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 0) throw InvalidInput("malformed color-set label \"" + label + "\"");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chromatic number: DSATUR branch-and-bound.

namespace {

class Dsatur {
 public:
  Dsatur(const Graph& g, std::uint64_t node_budget) : g_(g), n_(g.size()), node_budget_(node_budget) {
    adj_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) adj_[v] = g.neighbors(static_cast<int>(v));
  }

  int solve() {
    if (n_ == 0) return 0;
    best_ = greedy_upper_bound();
    const int lower = clique_lower_bound();
    if (best_ == lower) return best_;
    color_.assign(n_, -1);
    nb_count_.assign(n_, std::vector<int>(static_cast<std::size_t>(best_) + 1, 0));
    saturation_.assign(n_, 0);
    search(0, 0, lower);
    return best_;
  }

 private:
  int greedy_upper_bound() const {
    std::vector<int> color(n_, -1);
    std::vector<std::set<int>> sat(n_);
    int used = 0;
    for (std::size_t step = 0; step < n_; ++step) {
      std::size_t pick = n_;
      for (std::size_t v = 0; v < n_; ++v) {
        if (color[v] >= 0) continue;
        if (pick == n_ || sat[v].size() > sat[pick].size() ||
            (sat[v].size() == sat[pick].size() && adj_[v].size() > adj_[pick].size()))
          pick = v;
      }
      int c = 0;
      while (sat[pick].count(c)) ++c;
      color[pick] = c;
      used = std::max(used, c + 1);
      for (int u : adj_[pick]) sat[static_cast<std::size_t>(u)].insert(c);
    }
    return used;
  }

  int clique_lower_bound() const {
    // Greedy clique from each start vertex.
    std::size_t best = 1;
    for (std::size_t s = 0; s < n_; ++s) {
      std::vector<int> clique{static_cast<int>(s)};
      VertexBits cand = g_.row(static_cast<int>(s));
      while (cand.any()) {
        std::size_t pick = cand.find_first();
        std::size_t pick_deg = 0;
        for (auto v = cand.find_first(); v != VertexBits::npos; v = cand.find_next(v)) {
          std::size_t d = (cand & g_.row(static_cast<int>(v))).count();
          if (d > pick_deg) {
            pick = v;
            pick_deg = d;
          }
        }
        clique.push_back(static_cast<int>(pick));
        cand &= g_.row(static_cast<int>(pick));
      }
      best = std::max(best, clique.size());
    }
    return static_cast<int>(best);
  }

  void assign(std::size_t v, int c) {
    color_[v] = c;
    for (int u : adj_[v]) {
      auto uu = static_cast<std::size_t>(u);
      if (nb_count_[uu][static_cast<std::size_t>(c)]++ == 0) ++saturation_[uu];
    }
  }

  void unassign(std::size_t v) {
    int c = color_[v];
    for (int u : adj_[v]) {
      auto uu = static_cast<std::size_t>(u);
      if (--nb_count_[uu][static_cast<std::size_t>(c)] == 0) --saturation_[uu];
    }
    color_[v] = -1;
  }

  void search(std::size_t colored, int used, int lower) {
    if (++nodes_ > node_budget_)
      throw BudgetExceeded("chromatic_number: more than " + std::to_string(node_budget_) + " search nodes");
    if (colored == n_) {
      best_ = used;
      return;
    }
    std::size_t pick = n_;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      if (pick == n_ || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && adj_[v].size() > adj_[pick].size()))
        pick = v;
    }
    for (int c = 0; c <= used && c < best_ - 1; ++c) {
      if (nb_count_[pick][static_cast<std::size_t>(c)] != 0) continue;
      assign(pick, c);
      search(colored + 1, std::max(used, c + 1), lower);
      unassign(pick);
      if (best_ == lower || best_ <= used) return;
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::uint64_t node_budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<int> color_;
  std::vector<std::vector<int>> nb_count_;
  std::vector<int> saturation_;
  int best_ = 0;
};

mpz_class to_integer(const Rational& r) {
  if (r.get_den() != 1) throw Error("internal error: expected an integer ILP weight");
  return r.get_num();
}

}  // namespace

int chromatic_number(const Graph& g, const Budget& budget) { return Dsatur(g, budget.ilp_nodes).solve(); }

CoveringProgram independent_set_program(const Graph& g, const Rational& demand, const Budget& budget) {
  auto family = enumerate_independent_sets(g, /*maximal_only=*/true, budget);
  CoveringProgram p;
  p.row_labels = g.labels();
  p.demand = demand;
  for (const auto& set : family.sets) {
    std::string label = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) label += ';';
      label += g.label(set[i]);
    }
    p.column_labels.push_back(label + "}");
    p.column_rows.push_back(set);
  }
  return p;
}

int chromatic_number_ilp(const Graph& g, const Budget& budget) {
  if (g.size() == 0) return 0;
  auto sol = solve_ilp(independent_set_program(g, 1, budget), budget);
  return static_cast<int>(to_integer(sol.optimum).get_si());
}

FoldResult bfold_chromatic_number(const Graph& g, int b, const Budget& budget) {
  if (b < 1) throw InvalidInput("bfold_chromatic_number: b must be at least 1");
  FoldResult result;
  if (g.size() == 0) {
    result.coloring = FoldColoring(b, 0, {});
    return result;
  }
  auto program = independent_set_program(g, b, budget);
  auto sol = solve_ilp(program, budget);
  if (sol.status != LpStatus::kOptimal) throw Infeasible("bfold_chromatic_number: covering program infeasible");

  // Expand the column multiset into colors, in column order.
  std::vector<std::vector<int>> color_sets;
  for (std::size_t j = 0; j < program.columns(); ++j) {
    long copies = to_integer(sol.weights[j]).get_si();
    for (long c = 0; c < copies; ++c) color_sets.push_back(program.column_rows[j]);
  }
  std::vector<std::vector<int>> assignment(g.size());
  for (std::size_t c = 0; c < color_sets.size(); ++c)
    for (int v : color_sets[c]) {
      auto& mine = assignment[static_cast<std::size_t>(v)];
      if (mine.size() < static_cast<std::size_t>(b)) mine.push_back(static_cast<int>(c));
    }
  result.a = static_cast<int>(color_sets.size());
  result.coloring = FoldColoring(b, result.a, std::move(assignment));
  result.coloring.validate(g);
  return result;
}

FractionalSolution fractional_chromatic_number(const Graph& g, int b_search_bound, const Budget& budget) {
  FractionalSolution s;
  s.b_search_bound = b_search_bound;
  if (g.size() == 0) {
    s.chi_f = 0;
    s.witness_denominator = 1;
    return s;
  }
  auto program = independent_set_program(g, 1, budget);
  auto lp = solve_lp(program);
  if (lp.status != LpStatus::kOptimal) throw Infeasible("fractional_chromatic_number: covering program infeasible");
  s.chi_f = lp.optimum;
  s.sets = program.column_rows;
  s.weights = lp.weights;
  mpz_class lcm = 1;
  for (const auto& w : s.weights) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den_mpz_t());
  s.witness_denominator = Rational(lcm);

  for (int b = 1; b <= b_search_bound; ++b) {
    Rational target = s.chi_f * b;
    if (b > 1 && target.get_den() != 1) continue;  // chi_b is an integer, cannot attain
    int chi_b = b == 1 ? chromatic_number(g, budget) : bfold_chromatic_number(g, b, budget).a;
    s.chi_b_table[b] = chi_b;
    if (Rational(chi_b) == target) {
      s.b_star = b;
      break;
    }
  }
  return s;
}

Pmf coloring_distribution(const FoldColoring& c, const Pmf& vertex_pmf) {
  if (vertex_pmf.size() != c.vertex_count())
    throw InvalidInput("coloring_distribution: pmf has " + std::to_string(vertex_pmf.size()) +
                       " outcomes, coloring covers " + std::to_string(c.vertex_count()) + " vertices");
  std::vector<std::string> labels;
  std::vector<Rational> probs;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    const Rational& p = vertex_pmf.probs()[v];
    if (p == 0) continue;
    std::string label = c.set_label(static_cast<int>(v));
    auto [it, inserted] = index.emplace(label, labels.size());
    if (inserted) {
      labels.push_back(label);
      probs.push_back(p);
    } else {
      probs[it->second] += p;
    }
  }
  return Pmf(std::move(labels), std::move(probs));
}

}  // namespace fcolor
