// Acceptance run: one PASS/FAIL line per criterion.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fcolor/chargraph.hpp"
#include "fcolor/codec.hpp"
#include "fcolor/coloring.hpp"
#include "fcolor/error.hpp"
#include "fcolor/instance.hpp"
#include "fcolor/rates.hpp"
#include "support.hpp"

using namespace fcolor;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      failed_ << (failed_.tellp() > 0 ? "; " : "") << what;
    }
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? ", " : "") << s; }
  Outcome result() {
    out_.detail = out_.pass ? notes_.str() : failed_.str();
    return out_;
  }

 private:
  Outcome out_;
  std::ostringstream failed_, notes_;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool near(double v, double target, double tol) { return std::fabs(v - target) <= tol; }

Pmf weighted(const std::vector<long>& w) {
  long total = 0;
  for (long x : w) total += x;
  std::vector<std::string> labels;
  std::vector<Rational> p;
  for (std::size_t i = 0; i < w.size(); ++i) {
    labels.push_back("{" + std::to_string(i) + "}");
    p.emplace_back(w[i], total);
    p.back().canonicalize();
  }
  return Pmf(labels, p);
}

SourceModel example() { return load_instance(testing::data_dir() + "/example1.json"); }

FoldColoring entropy_coloring(const Graph& g, const Pmf& p, int b) {
  if (b == 1) return min_entropy_coloring(g, p, 1, static_cast<int>(g.size())).coloring;
  auto fold = bfold_chromatic_number(g, b);
  EntropyColoringOptions opts;
  opts.seed = fold.coloring;
  return min_entropy_coloring(g, p, b, fold.a, {}, opts).coloring;
}

Outcome criterion1() {
  Check c;
  Graph g = build_characteristic_graph(example());
  std::set<std::set<std::string>> edges, expected{
      {"-2", "-1"}, {"-2", "0"}, {"0", "1"}, {"1", "2"}, {"2", "-1"}};
  for (auto [u, v] : g.edges()) edges.insert({g.label(u), g.label(v)});
  c.expect(edges == expected, "edge set differs from the 5-cycle");
  c.note(std::to_string(g.size()) + " vertices, " + std::to_string(g.edge_count()) + " edges");
  return c.result();
}

Outcome criterion2() {
  Check c;
  Graph g = build_characteristic_graph(example());
  const int chi = chromatic_number(g);
  const int chi2 = bfold_chromatic_number(g, 2).a;
  auto frac = fractional_chromatic_number(g, 4);
  c.expect(chi == 3, "chi = " + std::to_string(chi));
  c.expect(chi2 == 5, "chi_2 = " + std::to_string(chi2));
  c.expect(frac.chi_f == Rational(5, 2), "chi_f = " + to_string(frac.chi_f));
  c.expect(frac.b_star == 2, "b* differs from 2");
  c.note("chi=3, chi_2=5, chi_f=" + to_string(frac.chi_f) + ", b*=2");
  return c.result();
}

Outcome criterion3() {
  Check c;
  Graph g2 = characteristic_power_graph(example(), 2);
  const int chi = chromatic_number(g2);
  const int chi2 = bfold_chromatic_number(g2, 2).a;
  c.expect(chi == 8, "chi(G^2) = " + std::to_string(chi));
  c.expect(chi2 == 13, "chi_2(G^2) = " + std::to_string(chi2));
  c.note("chi(G^2)=" + std::to_string(chi) + ", chi_2(G^2)=" + std::to_string(chi2));
  return c.result();
}

Outcome criterion4() {
  Check c;
  auto m = example();
  auto f1 = fractional_chromatic_number(build_characteristic_graph(m), 1);
  auto f2 = fractional_chromatic_number(characteristic_power_graph(m, 2), 1);
  c.expect(f2.chi_f == Rational(25, 4), "chi_f(G^2) = " + to_string(f2.chi_f));
  c.expect(f2.chi_f == f1.chi_f * f1.chi_f, "chi_f(G^2) != chi_f(G)^2");
  c.note("chi_f(G^2)=" + to_string(f2.chi_f) + " = (" + to_string(f1.chi_f) + ")^2");
  return c.result();
}

Outcome criterion5() {
  Check c;
  auto gap = integrality_gap(example(), 1, 2);
  const double trad = gap.traditional.rate, frac = gap.fractional.rate();
  c.expect(gap.exact, "rates are not proven optima");
  c.expect(near(trad, 1.5219, 5e-4), "traditional " + fmt(trad));
  c.expect(near(frac, 1.1610, 5e-4), "fractional " + fmt(frac));
  c.expect(near(gap.ig, 1.311, 2e-3), "IG_1 " + fmt(gap.ig));
  c.note("traditional " + fmt(trad) + ", fractional " + fmt(frac) + ", IG_1 " + fmt(gap.ig, 3));
  return c.result();
}

Outcome criterion6() {
  Check c;
  const double quoted = shannon_entropy(weighted({4, 4, 4, 4, 4, 2, 2, 1}));
  c.expect(near(quoted, 2.8839, 5e-4), "quoted distribution entropy " + fmt(quoted));
  auto r = chromatic_entropy_rate(example(), 2);
  c.expect(r.optimal, "n=2 search not exhaustive");
  c.expect(r.rate <= 1.4420,
           "exhaustive minimum at n=2, b=1 is " + fmt(r.entropy_bits) + " bits = " + fmt(r.rate) +
               " per symbol > 1.4420; the quoted 5x4+2+2+1 class structure has no valid coloring of G^2");
  c.note("quoted entropy " + fmt(quoted) + ", search " + fmt(r.rate) + " per symbol");
  return c.result();
}

Outcome criterion7() {
  Check c;
  std::vector<long> w(6, 2);
  w.insert(w.end(), 13, 1);
  const double h = shannon_entropy(weighted(w));
  c.expect(near(h, 4.1639, 5e-4), "entropy " + fmt(h));
  c.expect(near(h / 4, 1.0410, 5e-4), "per symbol-replica " + fmt(h / 4));
  c.note("entropy " + fmt(h) + " bits, " + fmt(h / 4) + " per symbol-replica (0.92 not reproduced)");
  return c.result();
}

Outcome criterion8() {
  Check c;
  auto b1 = build_codebook(weighted({4, 4, 4, 4, 4, 2, 2, 1}));
  std::vector<long> w(6, 2);
  w.insert(w.end(), 13, 1);
  auto b2 = build_codebook(weighted(w));
  c.expect(b1.average_length() == Rational(74, 25), "first average " + to_string(b1.average_length()));
  c.expect(kraft_sum(b1) == 1, "first Kraft sum " + to_string(kraft_sum(b1)));
  c.expect(b2.average_length() == Rational(106, 25), "second average " + to_string(b2.average_length()));
  c.expect(kraft_sum(b2) == 1, "second Kraft sum " + to_string(kraft_sum(b2)));
  const Rational r1 = b1.average_length() / 2, r2 = b2.average_length() / 4;
  c.expect(r1 == Rational(37, 25), "first rate " + to_string(r1));
  c.expect(r2 == Rational(53, 50), "second rate " + to_string(r2));
  c.note("74/25 and 106/25 bits, Kraft 1 and 1, rates " + to_string(r1) + " = 1.48 and " + to_string(r2) + " = 1.06");
  return c.result();
}

Outcome criterion9() {
  Check c;
  auto m = example();
  Graph g2 = characteristic_power_graph(m, 2);
  Pmf p2 = block_pmf(m, 2);
  const std::vector<std::vector<std::vector<std::string>>> replicas{{{"-2", "2"}}, {{"-2", "2"}, {"0", "1"}}};
  const std::vector<std::multiset<std::string>> expected{{"-3", "3"}, {"-3", "-1", "3", "2"}};
  std::ostringstream cases;
  for (int b : {1, 2}) {
    auto col = entropy_coloring(g2, p2, b);
    auto book = build_codebook(replica_distribution(m, 2, col));
    auto report = verify_zero_error(m, 2, col, book);
    c.expect(report.ok && report.mismatches == 0,
             "b=" + std::to_string(b) + ": " + std::to_string(report.mismatches) + " mismatches, first " + report.counterexample);
    cases << (b > 1 ? "/" : "") << report.cases;
    auto enc = encode(m, 2, col, book, replicas[static_cast<std::size_t>(b - 1)]);
    auto dec = decode(m, 2, col, book, enc.bits, {"-1", "1"}).flat_outcomes();
    c.expect(std::multiset<std::string>(dec.begin(), dec.end()) == expected[static_cast<std::size_t>(b - 1)],
             "walkthrough b=" + std::to_string(b) + " decoded other outcomes");
  }
  c.note(cases.str() + " cases, 0 mismatches, walkthroughs {-3,3} and {-3,-1,3,2}");
  return c.result();
}

Outcome criterion10() {
  Check c;
  auto table = monotonicity_table(example(), 2, 2);
  const bool complete = table.rows.size() == 2 && table.rows[0].gap && table.rows[1].gap;
  c.expect(complete, "gap table incomplete");
  if (!complete) return c.result();
  const auto& g1 = *table.rows[0].gap;
  const auto& g2 = *table.rows[1].gap;
  c.expect(g1.exact && g2.exact, "gaps are not exact");
  c.expect(g2.ig >= g1.ig, "IG_2 " + fmt(g2.ig) + " < IG_1 " + fmt(g1.ig));
  c.note("IG_1 " + fmt(g1.ig) + " <= IG_2 " + fmt(g2.ig));
  return c.result();
}

Outcome criterion11() {
  Check c;
  std::mt19937_64 rng(20240611);
  int attained = 0, codebooks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto m = testing::random_model(rng, 6);
    const std::string tag = "model " + std::to_string(trial) + ": ";
    Graph g = build_characteristic_graph(m);
    Pmf p = marginal_x1(m);

    RateOptions opts;
    const double trad = chromatic_entropy_rate(m, 1, opts).rate;
    const double frac = fractional_chromatic_entropy_rate(m, 1, 3, opts).rate();
    c.expect(frac <= trad + 1e-12, tag + "fractional rate above traditional");

    auto lp = fractional_chromatic_number(g, 1);
    Rational best_ratio;
    for (int b = 1; b <= 6; ++b) {
      auto fold = bfold_chromatic_number(g, b);
      Rational ratio(fold.a, b);
      ratio.canonicalize();
      if (b <= 3) c.expect(lp.chi_f <= ratio, tag + "chi_f above chi_b/b at b=" + std::to_string(b));
      if (b == 1 || ratio < best_ratio) best_ratio = ratio;

      if (b <= 2) {
        std::vector<FoldColoring> colorings{fold.coloring, entropy_coloring(g, p, b)};
        for (const auto& col : colorings) {
          c.expect(col.is_valid(g), tag + "invalid coloring");
          auto dist = replica_distribution(m, 1, col);
          auto book = build_codebook(dist);
          const double h = shannon_entropy(dist), len = to_double(book.average_length());
          c.expect(h <= len + 1e-12 && len < h + 1, tag + "code length outside [H, H+1)");
          ++codebooks;
          auto report = verify_zero_error(m, 1, col, book);
          c.expect(report.ok, tag + "zero-error check failed at " + report.counterexample);
        }
      }
    }
    if (lp.witness_denominator <= 6) {
      ++attained;
      c.expect(best_ratio == lp.chi_f, tag + "LP optimum " + to_string(lp.chi_f) + " != min chi_b/b " + to_string(best_ratio));
    } else {
      c.expect(best_ratio >= lp.chi_f, tag + "chi_b/b below the LP optimum");
    }
  }
  c.note("200 models, " + std::to_string(attained) + " with chi_f attained by b <= 6, " + std::to_string(codebooks) +
         " codebooks");
  return c.result();
}

Outcome criterion12() {
  Check c;
  const double bound = conjecture_bound(1, 2, Rational(5, 2));
  auto gap = integrality_gap(example(), 1, 2);
  c.expect(near(bound, 1.1387, 5e-4), "bound " + fmt(bound));
  c.expect(gap.conjecture_lower_bound && near(*gap.conjecture_lower_bound, bound, 1e-12), "gap report omits the bound");
  c.note("bound " + fmt(bound) + " alongside IG_1 " + fmt(gap.ig, 3) + (gap.ig >= bound ? " (holds here)" : " (violated here)"));
  return c.result();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  bool allow_known = false;
  app.add_flag("--allow-known-failures", allow_known,
               "exit 0 when the only failures are the criteria documented as unattainable");
  CLI11_PARSE(app, argc, argv);

  // Criterion 6 asks the exhaustive search to reach the quoted entropy, which
  // no valid coloring of G^2 attains.
  const std::set<int> known_unattainable{6};

  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                       criterion5, criterion6, criterion7,  criterion8,
                                                       criterion9, criterion10, criterion11, criterion12};
  int failures = 0, unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) {
      ++failures;
      if (!known_unattainable.count(id)) ++unexpected;
    }
  }
  std::printf("%d/%zu passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  if (failures == 0) return 0;
  return allow_known && unexpected == 0 ? 0 : 1;
}
