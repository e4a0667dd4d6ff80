#include "fcolor/chargraph.hpp"

#include "fcolor/error.hpp"

namespace fcolor {
namespace {

std::optional<std::size_t> witness(const SourceModel& m, std::size_t u, std::size_t v) {
  if (u == v) return std::nullopt;
  for (std::size_t j = 0; j < m.x2_size(); ++j)
    if (m.p(u, j) > 0 && m.p(v, j) > 0 && m.f(u, j) != m.f(v, j)) return j;
  return std::nullopt;
}

}  // namespace

Graph build_characteristic_graph(const SourceModel& m) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t u = 0; u < m.x1_size(); ++u)
    for (std::size_t v = u + 1; v < m.x1_size(); ++v)
      if (witness(m, u, v)) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return Graph(m.x1_alphabet(), edges);
}

std::optional<std::string> confusable(const SourceModel& m, const std::string& u, const std::string& v) {
  auto j = witness(m, m.x1_index(u), m.x1_index(v));
  if (!j) return std::nullopt;
  return m.x2_alphabet()[*j];
}

Graph characteristic_power_graph(const SourceModel& m, unsigned n, const Budget& budget) {
  return and_power(build_characteristic_graph(m), n, budget);
}

Pmf block_pmf(const SourceModel& m, unsigned n, const Budget& budget) {
  if (n == 0) throw InvalidInput("block_pmf: n must be at least 1");
  Pmf marginal = marginal_x1(m);
  const std::size_t k = m.x1_size();
  std::size_t count = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (count > budget.power_vertices / k)
      throw BudgetExceeded("block_pmf: " + std::to_string(k) + "^" + std::to_string(n) +
                           " blocks exceeds the vertex budget of " + std::to_string(budget.power_vertices));
    count *= k;
  }
  std::vector<std::string> labels(count);
  std::vector<Rational> probs(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t rest = t;
    std::vector<std::size_t> digits(n);
    for (unsigned i = n; i-- > 0;) {
      digits[i] = rest % k;
      rest /= k;
    }
    Rational p = 1;
    std::vector<std::string> symbols;
    for (unsigned i = 0; i < n; ++i) {
      p *= marginal.probs()[digits[i]];
      symbols.push_back(m.x1_alphabet()[digits[i]]);
    }
    labels[t] = join_tuple_label(symbols);
    probs[t] = p;
  }
  return Pmf(std::move(labels), std::move(probs));
}

std::vector<std::string> split_tuple_label(const std::string& label) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = label.find(',', start);
    out.push_back(label.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_tuple_label(const std::vector<std::string>& symbols) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += ',';
    out += symbols[i];
  }
  return out;
}

}  // namespace fcolor
