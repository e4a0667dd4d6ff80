#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fcolor/chargraph.hpp"
#include "fcolor/error.hpp"
#include "fcolor/rates.hpp"
#include "support.hpp"

using namespace fcolor;

namespace {

// Reverses both alphabets and renames every symbol.
SourceModel relabeled(const SourceModel& m) {
  const auto k1 = m.x1_size(), k2 = m.x2_size();
  std::vector<std::string> a1, a2;
  for (std::size_t i = 0; i < k1; ++i) a1.push_back("p" + m.x1_alphabet()[k1 - 1 - i]);
  for (std::size_t j = 0; j < k2; ++j) a2.push_back("q" + m.x2_alphabet()[k2 - 1 - j]);
  std::vector<std::vector<Rational>> p(k1, std::vector<Rational>(k2));
  std::vector<std::vector<std::string>> f(k1, std::vector<std::string>(k2));
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = 0; j < k2; ++j) {
      p[i][j] = m.p(k1 - 1 - i, k2 - 1 - j);
      f[i][j] = "r" + m.f(k1 - 1 - i, k2 - 1 - j);
    }
  return SourceModel(a1, a2, p, f);
}

bool degenerate(const SourceModel& m) { return build_characteristic_graph(m).edge_count() == 0; }

}  // namespace

TEST_CASE("example rates at n=1") {
  auto m = testing::example1();
  auto trad = chromatic_entropy_rate(m, 1);
  CHECK(trad.optimal);
  CHECK(trad.rate == doctest::Approx(1.5219).epsilon(5e-4 / 1.5219));
  CHECK(trad.b == 1);
  auto frac = fractional_chromatic_entropy_rate(m, 1, 2);
  CHECK(frac.optimal());
  CHECK(frac.best_report().b == 2);
  CHECK(frac.best_report().a == 5);
  CHECK(frac.rate() == doctest::Approx(std::log2(5.0) / 2).epsilon(1e-12));
  CHECK(frac.per_b.size() == 2);
  CHECK(frac.per_b[0].rate == doctest::Approx(trad.rate));
  auto gap = integrality_gap(m, 1, 2);
  CHECK(gap.exact);
  CHECK(gap.ig == doctest::Approx(1.311).epsilon(0.002 / 1.311));
  CHECK(gap.ig_lower == gap.ig);
  CHECK(gap.ig_upper == gap.ig);
  CHECK(gap.chi_f_base == Rational(5, 2));
  CHECK(gap.b_star_n == 2);
  REQUIRE(gap.conjecture_lower_bound);
  CHECK(*gap.conjecture_lower_bound == doctest::Approx(1.1387).epsilon(5e-4 / 1.1387));
}

TEST_CASE("example rates at n=2") {
  auto m = testing::example1();
  auto trad = chromatic_entropy_rate(m, 2);
  CHECK(trad.optimal);
  CHECK(trad.rate == doctest::Approx(2.903465 / 2).epsilon(1e-6));
  CHECK(trad.rate < 1.5219);
  auto only_b1 = fractional_chromatic_entropy_rate(m, 2, 1);
  CHECK(only_b1.per_b.size() == 1);
  CHECK(only_b1.rate() == doctest::Approx(trad.rate));
  RateOptions threaded;
  threaded.threads = 2;
  auto frac = fractional_chromatic_entropy_rate(m, 2, 2, threaded);
  CHECK(frac.best_report().b == 2);
  CHECK(frac.best_report().a == 13);
  CHECK(frac.rate() == doctest::Approx(4.403856 / 4).epsilon(1e-6));
  CHECK(frac.best_report().conditional_rate <= frac.rate() + 1e-12);
}

TEST_CASE("gap increases from n=1 to n=2 on the example") {
  auto table = monotonicity_table(testing::example1(), 2, 2);
  REQUIRE(table.rows.size() == 2);
  REQUIRE(table.rows[0].gap);
  REQUIRE(table.rows[1].gap);
  CHECK(table.rows[1].gap->exact);
  CHECK(table.rows[1].gap->ig >= table.rows[0].gap->ig);
  CHECK(table.inversions.empty());
  CHECK(table.rows[1].gap->b_star_n == 4);
}

TEST_CASE("degenerate models") {
  auto m = testing::constant_model(3);
  CHECK(chromatic_entropy_rate(m, 1).rate == doctest::Approx(0.0));
  CHECK(chromatic_entropy_rate(m, 2).rate == doctest::Approx(0.0));
  CHECK_THROWS_AS(integrality_gap(m, 1, 2), Undefined);
  auto single = testing::constant_model(1);
  auto table = monotonicity_table(single, 2, 2);
  REQUIRE(table.rows.size() == 2);
  for (const auto& row : table.rows) {
    CHECK_FALSE(row.gap);
    CHECK_FALSE(row.error.empty());
  }
  CHECK_THROWS_AS(chromatic_entropy_rate(m, 0), InvalidInput);
  CHECK_THROWS_AS(fractional_chromatic_entropy_rate(m, 1, 0), InvalidInput);
}

TEST_CASE("complete graphs under the per-replica normalization") {
  // Each vertex keeps its own color set, so H(C) = log k for every b and
  // the normalized rate falls as log k / b.
  for (int k : {2, 3, 4}) {
    auto m = testing::complete_model(k);
    CHECK(chromatic_entropy_rate(m, 1).rate == doctest::Approx(std::log2(k)));
    auto frac = fractional_chromatic_entropy_rate(m, 1, 3);
    for (const auto& r : frac.per_b) {
      CHECK(r.entropy_bits == doctest::Approx(std::log2(k)));
      CHECK(r.a == k * r.b);
    }
    CHECK(frac.best_report().b == 3);
    auto gap = integrality_gap(m, 1, 3);
    CHECK(gap.b_star_n == 1);
    CHECK(gap.ig == doctest::Approx(3.0));
  }
}

TEST_CASE("conjecture bound") {
  CHECK(conjecture_bound(1, 2, Rational(5, 2)) == doctest::Approx(1.1387).epsilon(5e-4 / 1.1387));
  for (unsigned n : {1U, 2U, 5U})
    for (const Rational& chi : {Rational(5, 2), Rational(3), Rational(25, 4)}) CHECK(conjecture_bound(n, 1, chi) == doctest::Approx(1.0));
  double previous = 0;
  for (unsigned n : {1U, 2U, 4U, 16U, 256U, 65536U}) {
    double v = conjecture_bound(n, 2, Rational(5, 2));
    CHECK(v > previous);
    CHECK(v < 2.0);
    previous = v;
  }
  CHECK(previous == doctest::Approx(2.0).epsilon(1e-4));
  CHECK_THROWS_AS(conjecture_bound(1, 2, Rational(1)), InvalidInput);
  CHECK_THROWS_AS(conjecture_bound(1, 0, Rational(3)), InvalidInput);
  CHECK_THROWS_AS(conjecture_bound(0, 2, Rational(3)), InvalidInput);
}

TEST_CASE("rate properties on random models") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = testing::random_model(rng, 5);
    auto trad = chromatic_entropy_rate(m, 1);
    auto frac2 = fractional_chromatic_entropy_rate(m, 1, 2);
    auto frac3 = fractional_chromatic_entropy_rate(m, 1, 3);
    CHECK(frac2.rate() <= trad.rate + 1e-12);
    CHECK(frac3.rate() <= frac2.rate() + 1e-12);
    for (const auto& r : frac3.per_b) {
      CHECK(r.rate >= 0);
      CHECK(r.conditional_rate <= r.rate + 1e-12);
      CHECK(r.conditional_rate >= -1e-12);
      CHECK(r.colors_used <= r.a);
    }
    auto other = relabeled(m);
    CHECK(chromatic_entropy_rate(other, 1).rate == doctest::Approx(trad.rate).epsilon(1e-12));
    CHECK(fractional_chromatic_entropy_rate(other, 1, 3).rate() == doctest::Approx(frac3.rate()).epsilon(1e-12));
    if (!degenerate(m)) CHECK(integrality_gap(m, 1, 2).ig >= 1.0 - 1e-12);
  }
}

TEST_CASE("chromatic entropy rate does not increase with n") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 15; ++trial) {
    auto m = testing::random_model(rng, 4);
    auto r1 = chromatic_entropy_rate(m, 1), r2 = chromatic_entropy_rate(m, 2);
    CHECK(r2.rate <= r1.rate + 1e-12);
    Graph g = build_characteristic_graph(m);
    if (g.edge_count() == 0) continue;
    auto f1 = fractional_chromatic_number(g, 1), f2 = fractional_chromatic_number(and_power(g, 2), 1);
    CHECK(std::log2(to_double(f1.chi_f)) <= std::log2(chromatic_number(g)) + 1e-12);
    CHECK(std::log2(to_double(f2.chi_f)) / 2 <= std::log2(chromatic_number(and_power(g, 2))) / 2 + 1e-12);
  }
}

TEST_CASE("conditional color entropy") {
  auto m = testing::example1();
  auto r = chromatic_entropy_rate(m, 1);
  double h = conditional_color_entropy(m, 1, r.witness);
  CHECK(h == doctest::Approx(r.conditional_rate));
  // Each side value leaves two adjacent, equally likely sources.
  CHECK(h == doctest::Approx(1.0));
  FoldColoring short_coloring(1, 3, {{0}});
  CHECK_THROWS_AS(conditional_color_entropy(m, 1, short_coloring), InvalidInput);
}
