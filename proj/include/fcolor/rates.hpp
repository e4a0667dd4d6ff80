#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcolor/budget.hpp"
#include "fcolor/coloring.hpp"
#include "fcolor/probability.hpp"
#include "fcolor/rational.hpp"

namespace fcolor {

/// One minimum-entropy coloring of G^n, normalized to bits per source symbol
/// per replica.
struct RateReport {
  unsigned n = 1;
  int b = 1;
  int a = 0;                    // colors available to the search
  int colors_used = 0;
  double entropy_bits = 0.0;    // H(C), C the color set of X1^n
  double rate = 0.0;            // entropy_bits / (n b)
  double rate_lower = 0.0;      // proven lower bound on the rate
  double conditional_rate = 0;  // H(C | X2^n) / (n b)
  bool optimal = false;
  FoldColoring witness;
};

struct FractionalRateReport {
  unsigned n = 1;
  int b_max = 1;
  std::vector<RateReport> per_b;  // b = 1..b_max; entries past a budget failure are absent
  std::vector<std::string> failures;
  std::size_t best = 0;           // index into per_b of the minimizing b

  const RateReport& best_report() const { return per_b.at(best); }
  double rate() const { return best_report().rate; }
  /// Lower bound on the truncated infimum over the computed b values.
  double rate_lower() const;
  bool optimal() const;
};

struct GapReport {
  unsigned n = 1;
  int b_max = 1;
  RateReport traditional;
  FractionalRateReport fractional;
  bool exact = false;               // both rates are proven optima
  double ig = 0.0;                  // point value when exact, else midpoint of the interval
  double ig_lower = 0.0;
  double ig_upper = 0.0;
  Rational chi_f_base;              // chi_f of the single-letter graph
  std::optional<int> b_star_n;      // least b with chi_b(G^n)/b == chi_f(G^n), b <= b_star search bound
  std::optional<double> conjecture_lower_bound;
};

struct RateOptions {
  Budget budget;
  unsigned threads = 1;
  int b_star_search_bound = 8;
};

/// min over all valid colorings of G^n of H(C) / n (b = 1, colors unconstrained).
RateReport chromatic_entropy_rate(const SourceModel& m, unsigned n, const RateOptions& options = {});

/// min over b in [1, b_max] of H(C_b) / (n b), C_b the color set of a
/// minimum-entropy chi_b(G^n):b coloring. The b = 1 entry equals the
/// chromatic entropy rate.
FractionalRateReport fractional_chromatic_entropy_rate(const SourceModel& m, unsigned n, int b_max,
                                                       const RateOptions& options = {});

/// Ratio of the traditional to the fractional rate at block length n.
/// Throws Undefined when the fractional rate is zero.
GapReport integrality_gap(const SourceModel& m, unsigned n, int b_max,
                          const RateOptions& options = {});

/// b* log chi_f / (log b*^(1/n) + log chi_f), base 2. Throws InvalidInput
/// unless b_star >= 1, n >= 1 and chi_f > 1.
double conjecture_bound(unsigned n, int b_star, const Rational& chi_f);

struct MonotonicityRow {
  unsigned n = 1;
  std::optional<GapReport> gap;
  std::string error;  // set when the gap is undefined or over budget
};

struct MonotonicityTable {
  std::vector<MonotonicityRow> rows;
  std::vector<unsigned> inversions;  // n where IG_n < IG_{n-1} (both exact)
};

MonotonicityTable monotonicity_table(const SourceModel& m, unsigned n_max, int b_max,
                                     const RateOptions& options = {});

/// H(C | X2^n) for a coloring of G^n, C the color set of X1^n.
double conditional_color_entropy(const SourceModel& m, unsigned n, const FoldColoring& c,
                                 const Budget& budget = {});

}  // namespace fcolor
