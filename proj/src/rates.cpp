#include "fcolor/rates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "fcolor/chargraph.hpp"
#include "fcolor/error.hpp"

namespace fcolor {
namespace {

int distinct_colors(const FoldColoring& c) {
  std::vector<bool> seen(static_cast<std::size_t>(c.a()), false);
  int count = 0;
  for (const auto& set : c.assignment())
    for (int k : set)
      if (!seen[static_cast<std::size_t>(k)]) {
        seen[static_cast<std::size_t>(k)] = true;
        ++count;
      }
  return count;
}

RateReport make_report(const SourceModel& m, unsigned n, int b, int a, const EntropyColoring& r,
                       const Budget& budget) {
  RateReport report;
  const double scale = static_cast<double>(n) * b;
  report.n = n;
  report.b = b;
  report.a = a;
  report.colors_used = distinct_colors(r.coloring);
  report.entropy_bits = r.entropy;
  report.rate = r.entropy / scale;
  report.rate_lower = r.lower_bound / scale;
  report.conditional_rate = conditional_color_entropy(m, n, r.coloring, budget) / scale;
  report.optimal = r.optimal;
  report.witness = r.coloring;
  return report;
}

RateReport rate_at(const SourceModel& m, unsigned n, int b, const Graph& g, const Pmf& pmf, const Budget& budget) {
  if (b == 1) {
    const int a = std::max<int>(1, static_cast<int>(g.size()));
    return make_report(m, n, 1, a, min_entropy_coloring(g, pmf, 1, a, budget), budget);
  }
  FoldResult fold = bfold_chromatic_number(g, b, budget);
  EntropyColoringOptions opts;
  opts.seed = fold.coloring;
  return make_report(m, n, b, fold.a, min_entropy_coloring(g, pmf, b, fold.a, budget, opts), budget);
}

void check_block_length(unsigned n) {
  if (n < 1) throw InvalidInput("block length n must be at least 1");
}

}  // namespace

double FractionalRateReport::rate_lower() const {
  double lower = std::numeric_limits<double>::infinity();
  for (const auto& r : per_b) lower = std::min(lower, r.rate_lower);
  return lower;
}

bool FractionalRateReport::optimal() const {
  return failures.empty() && std::all_of(per_b.begin(), per_b.end(), [](const RateReport& r) { return r.optimal; });
}

RateReport chromatic_entropy_rate(const SourceModel& m, unsigned n, const RateOptions& options) {
  check_block_length(n);
  Graph g = characteristic_power_graph(m, n, options.budget);
  Pmf pmf = block_pmf(m, n, options.budget);
  return rate_at(m, n, 1, g, pmf, options.budget);
}

FractionalRateReport fractional_chromatic_entropy_rate(const SourceModel& m, unsigned n, int b_max,
                                                       const RateOptions& options) {
  check_block_length(n);
  if (b_max < 1) throw InvalidInput("b_max must be at least 1");
  const Graph g = characteristic_power_graph(m, n, options.budget);
  const Pmf pmf = block_pmf(m, n, options.budget);

  std::vector<std::optional<RateReport>> slots(static_cast<std::size_t>(b_max));
  std::vector<std::string> errors(static_cast<std::size_t>(b_max));
  std::atomic<int> next{1};
  auto worker = [&] {
    for (int b = next++; b <= b_max; b = next++) {
      const auto i = static_cast<std::size_t>(b - 1);
      try {
        slots[i] = rate_at(m, n, b, g, pmf, options.budget);
      } catch (const BudgetExceeded& e) {
        errors[i] = "b=" + std::to_string(b) + ": " + e.what();
      }
    }
  };
  const unsigned threads = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(b_max));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  FractionalRateReport report;
  report.n = n;
  report.b_max = b_max;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) report.per_b.push_back(std::move(*slots[i]));
    if (!errors[i].empty()) report.failures.push_back(errors[i]);
  }
  if (report.per_b.empty()) throw BudgetExceeded("no b in [1, " + std::to_string(b_max) + "] fits the budget: " + report.failures.front());
  for (std::size_t i = 1; i < report.per_b.size(); ++i)
    if (report.per_b[i].rate < report.per_b[report.best].rate - 1e-12) report.best = i;
  return report;
}

GapReport integrality_gap(const SourceModel& m, unsigned n, int b_max, const RateOptions& options) {
  GapReport gap;
  gap.n = n;
  gap.b_max = b_max;
  gap.fractional = fractional_chromatic_entropy_rate(m, n, b_max, options);
  if (gap.fractional.per_b.front().b == 1)
    gap.traditional = gap.fractional.per_b.front();
  else
    gap.traditional = chromatic_entropy_rate(m, n, options);

  const double frac = gap.fractional.rate();
  if (frac <= 0.0)
    throw Undefined("integrality gap undefined at n = " + std::to_string(n) + ": the fractional rate is 0");

  gap.exact = gap.traditional.optimal && gap.fractional.optimal();
  if (gap.exact) {
    gap.ig = gap.ig_lower = gap.ig_upper = gap.traditional.rate / frac;
  } else {
    gap.ig_lower = gap.traditional.rate_lower / frac;
    const double frac_lower = gap.fractional.rate_lower();
    gap.ig_upper = frac_lower > 0 ? gap.traditional.rate / frac_lower : std::numeric_limits<double>::infinity();
    gap.ig = std::isfinite(gap.ig_upper) ? (gap.ig_lower + gap.ig_upper) / 2 : gap.ig_lower;
  }

  const Graph base = build_characteristic_graph(m);
  gap.chi_f_base = fractional_chromatic_number(base, options.b_star_search_bound, options.budget).chi_f;
  try {
    const Graph gn = characteristic_power_graph(m, n, options.budget);
    gap.b_star_n = fractional_chromatic_number(gn, options.b_star_search_bound, options.budget).b_star;
  } catch (const BudgetExceeded&) {
    gap.b_star_n.reset();
  }
  if (gap.b_star_n && gap.chi_f_base > 1) gap.conjecture_lower_bound = conjecture_bound(n, *gap.b_star_n, gap.chi_f_base);
  return gap;
}

double conjecture_bound(unsigned n, int b_star, const Rational& chi_f) {
  if (n < 1) throw InvalidInput("conjecture_bound: n must be at least 1");
  if (b_star < 1) throw InvalidInput("conjecture_bound: b* must be at least 1");
  if (chi_f <= 1) throw InvalidInput("conjecture_bound: chi_f must exceed 1, got " + to_string(chi_f));
  const double log_chi = std::log2(to_double(chi_f));
  return b_star * log_chi / (std::log2(static_cast<double>(b_star)) / n + log_chi);
}

MonotonicityTable monotonicity_table(const SourceModel& m, unsigned n_max, int b_max, const RateOptions& options) {
  MonotonicityTable table;
  for (unsigned n = 1; n <= n_max; ++n) {
    MonotonicityRow row;
    row.n = n;
    try {
      row.gap = integrality_gap(m, n, b_max, options);
    } catch (const Undefined& e) {
      row.error = e.what();
    } catch (const BudgetExceeded& e) {
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto& prev = table.rows[i - 1].gap;
    const auto& cur = table.rows[i].gap;
    if (prev && cur && prev->exact && cur->exact && cur->ig < prev->ig - 1e-12) table.inversions.push_back(table.rows[i].n);
  }
  return table;
}

double conditional_color_entropy(const SourceModel& m, unsigned n, const FoldColoring& c, const Budget& budget) {
  check_block_length(n);
  const Pmf x1 = block_pmf(m, n, budget);
  if (c.vertex_count() != x1.size())
    throw InvalidInput("conditional_color_entropy: coloring has " + std::to_string(c.vertex_count()) +
                       " vertices, expected " + std::to_string(x1.size()));

  const std::size_t k1 = m.x1_size();
  const std::size_t k2 = m.x2_size();
  double cases = 1.0;
  for (unsigned i = 0; i < n; ++i) cases *= static_cast<double>(k1 * k2);
  if (cases > static_cast<double>(budget.codec_cases))
    throw BudgetExceeded("conditional_color_entropy: " + std::to_string(static_cast<std::uint64_t>(cases)) +
                         " joint outcomes exceed the case budget " + std::to_string(budget.codec_cases));

  std::size_t x2_blocks = 1;
  for (unsigned i = 0; i < n; ++i) x2_blocks *= k2;

  std::map<std::pair<std::size_t, std::string>, Rational> joint;
  std::vector<Rational> side(x2_blocks);
  std::vector<std::size_t> d1(n), d2(n);
  for (std::size_t v = 0; v < x1.size(); ++v) {
    for (std::size_t w = 0; w < x2_blocks; ++w) {
      std::size_t rv = v, rw = w;
      Rational p = 1;
      for (unsigned i = n; i-- > 0;) {
        d1[i] = rv % k1;
        rv /= k1;
        d2[i] = rw % k2;
        rw /= k2;
      }
      for (unsigned i = 0; i < n && p != 0; ++i) p *= m.p(d1[i], d2[i]);
      if (p == 0) continue;
      joint[{w, c.set_label(static_cast<int>(v))}] += p;
      side[w] += p;
    }
  }
  std::vector<double> pj, ps;
  for (const auto& [key, p] : joint) pj.push_back(p.get_d());
  for (const auto& p : side)
    if (p != 0) ps.push_back(p.get_d());
  return std::max(0.0, shannon_entropy(std::span<const double>(pj)) - shannon_entropy(std::span<const double>(ps)));
}

}  // namespace fcolor
