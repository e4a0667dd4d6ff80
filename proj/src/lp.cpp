#include "fcolor/lp.hpp"

#include <algorithm>
#include <optional>

#include "fcolor/error.hpp"

namespace fcolor {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

void CoveringProgram::validate() const {
  if (column_rows.size() != column_labels.size())
    throw InvalidInput("covering program: column label count does not match incidence");
  for (std::size_t j = 0; j < column_rows.size(); ++j) {
    const auto& rows_j = column_rows[j];
    for (std::size_t k = 0; k < rows_j.size(); ++k) {
      if (rows_j[k] < 0 || static_cast<std::size_t>(rows_j[k]) >= rows())
        throw InvalidInput("covering program: column \"" + column_labels[j] + "\" covers an unknown row");
      if (k > 0 && rows_j[k] <= rows_j[k - 1])
        throw InvalidInput("covering program: column \"" + column_labels[j] + "\" rows are not strictly sorted");
    }
  }
  if (demand < 0) throw InvalidInput("covering program: negative demand");
}

namespace {

// Primal: min 1'x  s.t.  sum_j a_ij x_j >= r_i,  x >= 0, with sparse rows
// whose coefficients are +1 or -1 (covering rows and branching bounds).
struct SparseRow {
  std::vector<std::pair<int, int>> entries;  // (column, coefficient)
  Rational rhs;
};

// Solves the packing dual  max r'y  s.t.  A'y <= 1,  y >= 0  by the tableau
// simplex with Bland's rule. Origin feasibility comes for free because the
// primal objective is all ones.
LpSolution solve_dual(std::size_t columns, const std::vector<SparseRow>& rows) {
  const std::size_t m = columns;      // dual constraints, one per primal column
  const std::size_t nv = rows.size(); // dual structural variables
  const std::size_t width = nv + m;   // plus one slack per constraint

  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1, Rational(0)));
  for (std::size_t i = 0; i < nv; ++i)
    for (auto [j, coef] : rows[i].entries) t[static_cast<std::size_t>(j)][i] += coef;
  for (std::size_t j = 0; j < m; ++j) {
    t[j][nv + j] = 1;
    t[j][width] = 1;
  }
  // Reduced-cost row of the maximization, z - r'y = 0.
  std::vector<Rational> cost(width + 1, Rational(0));
  for (std::size_t i = 0; i < nv; ++i) cost[i] = -rows[i].rhs;
  std::vector<std::size_t> basis(m);
  for (std::size_t j = 0; j < m; ++j) basis[j] = nv + j;

  LpSolution sol;
  while (true) {
    std::optional<std::size_t> entering;
    for (std::size_t c = 0; c < width; ++c)
      if (cost[c] < 0) {
        entering = c;
        break;
      }
    if (!entering) break;
    const std::size_t e = *entering;

    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][e] <= 0) continue;
      Rational ratio = t[r][width] / t[r][e];
      if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[*leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (!leave) {
      // Dual unbounded: some primal row cannot be satisfied.
      sol.status = LpStatus::kInfeasible;
      return sol;
    }

    const std::size_t l = *leave;
    const Rational pivot = t[l][e];
    for (auto& v : t[l]) v /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == l || t[r][e] == 0) continue;
      const Rational factor = t[r][e];
      for (std::size_t c = 0; c <= width; ++c)
        if (t[l][c] != 0) t[r][c] -= factor * t[l][c];
    }
    if (cost[e] != 0) {
      const Rational factor = cost[e];
      for (std::size_t c = 0; c <= width; ++c)
        if (t[l][c] != 0) cost[c] -= factor * t[l][c];
    }
    basis[l] = e;
    ++sol.pivots;
  }

  sol.status = LpStatus::kOptimal;
  sol.optimum = cost[width];
  sol.weights.resize(m);
  for (std::size_t j = 0; j < m; ++j) sol.weights[j] = cost[nv + j];
  return sol;
}

std::vector<SparseRow> covering_rows(const CoveringProgram& p) {
  std::vector<SparseRow> rows(p.rows());
  for (auto& r : rows) r.rhs = p.demand;
  for (std::size_t j = 0; j < p.columns(); ++j)
    for (int i : p.column_rows[j]) rows[static_cast<std::size_t>(i)].entries.emplace_back(static_cast<int>(j), 1);
  return rows;
}

bool satisfies(const CoveringProgram& p, const std::vector<Rational>& x) {
  std::vector<Rational> cover(p.rows(), Rational(0));
  for (std::size_t j = 0; j < p.columns(); ++j) {
    if (x[j] < 0) return false;
    for (int i : p.column_rows[j]) cover[static_cast<std::size_t>(i)] += x[j];
  }
  return std::all_of(cover.begin(), cover.end(), [&](const Rational& c) { return c >= p.demand; });
}

mpz_class ceil_of(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

mpz_class floor_of(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

struct Bounds {
  std::vector<std::optional<mpz_class>> lower, upper;
};

// Round the relaxation up (always feasible for a covering program with
// these bounds), then walk columns by increasing LP value and drop units
// while coverage and lower bounds allow.
std::vector<mpz_class> round_up(const CoveringProgram& p, const std::vector<Rational>& x, const Bounds& bounds) {
  std::vector<mpz_class> xi(p.columns());
  std::vector<mpz_class> cover(p.rows(), 0);
  for (std::size_t j = 0; j < p.columns(); ++j) {
    xi[j] = ceil_of(x[j]);
    for (int i : p.column_rows[j]) cover[static_cast<std::size_t>(i)] += xi[j];
  }
  std::vector<std::size_t> order(p.columns());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  const mpz_class demand = ceil_of(p.demand);
  for (std::size_t j : order) {
    while (xi[j] > 0) {
      if (bounds.lower[j] && xi[j] <= *bounds.lower[j]) break;
      bool ok = true;
      for (int i : p.column_rows[j])
        if (cover[static_cast<std::size_t>(i)] - 1 < demand) {
          ok = false;
          break;
        }
      if (!ok) break;
      --xi[j];
      for (int i : p.column_rows[j]) --cover[static_cast<std::size_t>(i)];
    }
  }
  return xi;
}

}  // namespace

LpSolution solve_lp(const CoveringProgram& p) {
  p.validate();
  LpSolution sol = solve_dual(p.columns(), covering_rows(p));
  if (sol.status == LpStatus::kOptimal && !satisfies(p, sol.weights))
    throw Error("solve_lp: internal error, recovered weights violate a covering row");
  return sol;
}

LpSolution solve_ilp(const CoveringProgram& p, const Budget& budget) {
  p.validate();
  if (p.columns() > budget.ilp_columns)
    throw BudgetExceeded("solve_ilp: " + std::to_string(p.columns()) + " columns exceeds the column budget of " +
                         std::to_string(budget.ilp_columns));

  const auto base_rows = covering_rows(p);
  std::optional<mpz_class> incumbent_value;
  std::vector<mpz_class> incumbent;
  LpSolution result;

  struct Node {
    Bounds bounds;
  };
  std::vector<Node> stack;
  Node root;
  root.bounds.lower.assign(p.columns(), std::nullopt);
  root.bounds.upper.assign(p.columns(), std::nullopt);
  stack.push_back(std::move(root));

  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++result.nodes > budget.ilp_nodes)
      throw BudgetExceeded("solve_ilp: more than " + std::to_string(budget.ilp_nodes) +
                           " branch-and-bound nodes (node budget)");

    std::vector<SparseRow> rows = base_rows;
    for (std::size_t j = 0; j < p.columns(); ++j) {
      if (node.bounds.lower[j]) rows.push_back({{{static_cast<int>(j), 1}}, Rational(*node.bounds.lower[j])});
      if (node.bounds.upper[j]) rows.push_back({{{static_cast<int>(j), -1}}, Rational(-*node.bounds.upper[j])});
    }
    LpSolution relax = solve_dual(p.columns(), rows);
    result.pivots += relax.pivots;
    if (relax.status != LpStatus::kOptimal) continue;

    const mpz_class bound = ceil_of(relax.optimum);
    if (incumbent_value && bound >= *incumbent_value) continue;

    auto rounded = round_up(p, relax.weights, node.bounds);
    mpz_class rounded_value = 0;
    for (const auto& v : rounded) rounded_value += v;
    if (!incumbent_value || rounded_value < *incumbent_value) {
      incumbent_value = rounded_value;
      incumbent = rounded;
    }
    if (bound >= *incumbent_value) continue;

    std::optional<std::size_t> branch;
    Rational best_distance;
    const Rational half(1, 2);
    for (std::size_t j = 0; j < p.columns(); ++j) {
      const Rational frac = relax.weights[j] - Rational(floor_of(relax.weights[j]));
      if (frac == 0) continue;
      Rational distance = abs(frac - half);
      if (!branch || distance < best_distance) {
        branch = j;
        best_distance = distance;
      }
    }
    if (!branch) continue;  // integral relaxation, already taken as incumbent

    const std::size_t j = *branch;
    Node up = node;
    up.bounds.lower[j] = ceil_of(relax.weights[j]);
    Node down = std::move(node);
    down.bounds.upper[j] = floor_of(relax.weights[j]);
    // Depth-first, up-branch explored first.
    stack.push_back(std::move(down));
    stack.push_back(std::move(up));
  }

  if (!incumbent_value) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.optimum = Rational(*incumbent_value);
  result.weights.reserve(incumbent.size());
  for (const auto& v : incumbent) result.weights.emplace_back(v);
  return result;
}

}  // namespace fcolor
