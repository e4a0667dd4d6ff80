#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fcolor/budget.hpp"
#include "fcolor/rational.hpp"

namespace fcolor {

/// min sum_j x_j  s.t.  sum_{j covers i} x_j >= demand for every row i, x >= 0.
/// Columns are typically independent sets, rows the vertices they cover.
struct CoveringProgram {
  std::vector<std::string> column_labels;
  std::vector<std::string> row_labels;
  std::vector<std::vector<int>> column_rows;  // rows covered by each column, sorted
  Rational demand = 1;

  std::size_t columns() const { return column_labels.size(); }
  std::size_t rows() const { return row_labels.size(); }
  /// Throws InvalidInput on out-of-range or duplicated row indices.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational optimum;
  std::vector<Rational> weights;  // one per column
  std::uint64_t pivots = 0;       // simplex pivots (summed over nodes for ILP)
  std::uint64_t nodes = 0;        // branch-and-bound nodes, ILP only
};

/// Exact simplex over rationals with Bland's rule. The covering program is
/// solved through its packing dual, whose origin is feasible, and the
/// primal weights are read from the final reduced costs.
LpSolution solve_lp(const CoveringProgram& p);

/// Integer optimum by depth-first branch-and-bound on solve_lp bounds.
/// Branches on the column whose fractional part is closest to 1/2 (lowest
/// index on ties), up-branch first. Throws BudgetExceeded past the column or
/// node budget.
LpSolution solve_ilp(const CoveringProgram& p, const Budget& budget = {});

}  // namespace fcolor
