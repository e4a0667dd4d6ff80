#include <doctest.h>

#include <random>
#include <set>

#include "fcolor/chargraph.hpp"
#include "fcolor/error.hpp"
#include "support.hpp"

using namespace fcolor;

TEST_CASE("example characteristic graph is a 5-cycle") {
  auto m = testing::example1();
  Graph g = build_characteristic_graph(m);
  CHECK(g.labels() == std::vector<std::string>{"-2", "-1", "0", "1", "2"});
  std::set<std::pair<std::string, std::string>> edges;
  for (auto [u, v] : g.edges()) edges.emplace(g.label(u), g.label(v));
  CHECK(edges == std::set<std::pair<std::string, std::string>>{
                     {"-2", "-1"}, {"-2", "0"}, {"0", "1"}, {"1", "2"}, {"-1", "2"}});
  for (std::size_t v = 0; v < g.size(); ++v) CHECK(g.degree(static_cast<int>(v)) == 2);
}

TEST_CASE("confusable witnesses") {
  auto m = testing::example1();
  CHECK(confusable(m, "-2", "-1") == std::optional<std::string>("-2"));
  CHECK(confusable(m, "-2", "1") == std::nullopt);
  CHECK(confusable(m, "0", "2") == std::nullopt);
  CHECK(confusable(m, "-2", "-2") == std::nullopt);
  CHECK_THROWS_AS(confusable(m, "-2", "7"), InvalidInput);
}

TEST_CASE("identity and constant functions") {
  for (int k = 1; k <= 5; ++k) {
    Graph complete = build_characteristic_graph(testing::complete_model(k));
    CHECK(complete.edge_count() == static_cast<std::size_t>(k * (k - 1) / 2));
    Graph edgeless = build_characteristic_graph(testing::constant_model(k));
    CHECK(edgeless.edge_count() == 0);
  }
}

TEST_CASE("characteristic graph matches the direct edge rule") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = testing::random_model(rng);
    Graph g = build_characteristic_graph(m);
    auto expected = testing::oracle::characteristic(m);
    bool same = true;
    for (std::size_t u = 0; u < g.size(); ++u)
      for (std::size_t v = 0; v < g.size(); ++v)
        if (g.adjacent(static_cast<int>(u), static_cast<int>(v)) != expected[u][v]) same = false;
    CHECK(same);
  }
}

TEST_CASE("non-adjacent vertices are interchangeable for the decoder") {
  // Knowing an independent set and x2 pins f whenever P(x1, x2) > 0.
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_model(rng);
    Graph g = build_characteristic_graph(m);
    for (std::size_t u = 0; u < m.x1_size(); ++u)
      for (std::size_t v = u + 1; v < m.x1_size(); ++v) {
        if (g.adjacent(static_cast<int>(u), static_cast<int>(v))) continue;
        for (std::size_t x2 = 0; x2 < m.x2_size(); ++x2)
          if (m.p(u, x2) > 0 && m.p(v, x2) > 0) CHECK(m.f(u, x2) == m.f(v, x2));
      }
  }
}

TEST_CASE("adding mass never removes edges") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_model(rng);
    std::vector<std::vector<Rational>> p = m.joint_pmf();
    const Rational scale = 1 + Rational(static_cast<long>(m.x1_size() * m.x2_size()), 1000);
    for (auto& row : p)
      for (auto& x : row) {
        x = (x + Rational(1, 1000)) / scale;
        x.canonicalize();
      }
    SourceModel denser(m.x1_alphabet(), m.x2_alphabet(), p, m.function_table());
    Graph a = build_characteristic_graph(m), b = build_characteristic_graph(denser);
    for (auto [u, v] : a.edges()) CHECK(b.adjacent(u, v));
  }
}

TEST_CASE("block pmf and power graph") {
  auto m = testing::example1();
  Graph g2 = characteristic_power_graph(m, 2);
  Pmf p2 = block_pmf(m, 2);
  CHECK(p2.outcomes() == g2.labels());
  CHECK(p2.prob("-2,0") == Rational(1, 25));
  CHECK(split_tuple_label("-2,0") == std::vector<std::string>{"-2", "0"});
  CHECK(join_tuple_label({"1", "-1", "2"}) == "1,-1,2");
  CHECK(split_tuple_label("x") == std::vector<std::string>{"x"});
}
