#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

namespace testing {

using fcolor::Rational;

fcolor::SourceModel example1() {
  std::vector<std::string> a{"-2", "-1", "0", "1", "2"};
  const Rational t(1, 10), z(0);
  std::vector<std::vector<Rational>> p{
      {t, t, z, z, z}, {t, z, z, z, t}, {z, t, t, z, z}, {z, z, t, t, z}, {z, z, z, t, t}};
  return fcolor::SourceModel(a, a, p, fcolor::builtin_table(fcolor::BuiltinFunction::kSum, a, a));
}

fcolor::SourceModel complete_model(int k) {
  std::vector<std::string> a;
  for (int i = 0; i < k; ++i) a.push_back(std::to_string(i));
  std::vector<std::vector<Rational>> p(static_cast<std::size_t>(k),
                                       std::vector<Rational>(static_cast<std::size_t>(k), Rational(1, k * k)));
  return fcolor::SourceModel(a, a, p, fcolor::builtin_table(fcolor::BuiltinFunction::kIdentity, a, a));
}

fcolor::SourceModel constant_model(int k) {
  std::vector<std::string> a;
  for (int i = 0; i < k; ++i) a.push_back("s" + std::to_string(i));
  std::vector<std::vector<Rational>> p(static_cast<std::size_t>(k),
                                       std::vector<Rational>(static_cast<std::size_t>(k), Rational(1, k * k)));
  std::vector<std::vector<std::string>> f(static_cast<std::size_t>(k), std::vector<std::string>(static_cast<std::size_t>(k), "c"));
  return fcolor::SourceModel(a, a, p, f);
}

fcolor::SourceModel random_model(std::mt19937_64& rng, int max_alphabet) {
  std::uniform_int_distribution<int> size(1, max_alphabet);
  const int k1 = size(rng), k2 = size(rng);
  std::uniform_int_distribution<int> weight(0, 4);
  std::uniform_int_distribution<int> value(0, 2);
  std::vector<std::vector<long>> w(static_cast<std::size_t>(k1), std::vector<long>(static_cast<std::size_t>(k2)));
  long total = 0;
  for (auto& row : w)
    for (auto& x : row) total += (x = weight(rng));
  if (total == 0) {
    w[0][0] = 1;
    total = 1;
  }
  std::vector<std::vector<Rational>> p(static_cast<std::size_t>(k1));
  std::vector<std::vector<std::string>> f(static_cast<std::size_t>(k1));
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k2; ++j) {
      p[static_cast<std::size_t>(i)].emplace_back(w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], total);
      p[static_cast<std::size_t>(i)].back().canonicalize();
      f[static_cast<std::size_t>(i)].push_back("v" + std::to_string(value(rng)));
    }
  std::vector<std::string> a1, a2;
  for (int i = 0; i < k1; ++i) a1.push_back("a" + std::to_string(i));
  for (int j = 0; j < k2; ++j) a2.push_back("b" + std::to_string(j));
  return fcolor::SourceModel(a1, a2, p, f);
}

std::string data_dir() { return FCOLOR_DATA_DIR; }

namespace oracle {

double entropy(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

Adjacency characteristic(const fcolor::SourceModel& m) {
  const auto k1 = m.x1_size(), k2 = m.x2_size();
  Adjacency g(k1, std::vector<bool>(k1, false));
  for (std::size_t u = 0; u < k1; ++u)
    for (std::size_t v = 0; v < k1; ++v)
      for (std::size_t x = 0; x < k2; ++x)
        if (u != v && m.p(u, x) > 0 && m.p(v, x) > 0 && m.f(u, x) != m.f(v, x)) g[u][v] = true;
  return g;
}

Adjacency power(const Adjacency& g, unsigned n) {
  const std::size_t k = g.size();
  std::size_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= k;
  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(n);
    for (unsigned i = n; i-- > 0;) {
      d[i] = x % k;
      x /= k;
    }
    return d;
  };
  Adjacency out(count, std::vector<bool>(count, false));
  for (std::size_t s = 0; s < count; ++s)
    for (std::size_t t = 0; t < count; ++t) {
      if (s == t) continue;
      auto ds = digits(s), dt = digits(t);
      for (unsigned i = 0; i < n; ++i)
        if (g[ds[i]][dt[i]]) out[s][t] = true;
    }
  return out;
}

std::vector<std::vector<int>> independent_sets(const Adjacency& g, bool maximal_only) {
  const int n = static_cast<int>(g.size());
  std::vector<std::uint64_t> indep;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        if ((mask >> u & 1) && (mask >> v & 1) && g[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) ok = false;
    if (ok) indep.push_back(mask);
  }
  std::vector<std::vector<int>> out;
  for (auto m : indep) {
    if (maximal_only) {
      bool maximal = true;
      for (auto other : indep)
        if (other != m && (other & m) == m) maximal = false;
      if (!maximal) continue;
    }
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
      if (m >> v & 1) s.push_back(v);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

int chromatic_number(const Adjacency& g) {
  const int n = static_cast<int>(g.size());
  if (n == 0) return 0;
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::function<bool(int, int)> fill = [&](int v, int k) {
    if (v == n) return true;
    for (int c = 0; c < k; ++c) {
      bool ok = true;
      for (int u = 0; u < v; ++u)
        if (g[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] && color[static_cast<std::size_t>(u)] == c) ok = false;
      if (!ok) continue;
      color[static_cast<std::size_t>(v)] = c;
      if (fill(v + 1, k)) return true;
    }
    return false;
  };
  for (int k = 1;; ++k)
    if (fill(0, k)) return k;
}

namespace {

std::vector<std::uint64_t> subsets_of_size(int a, int b) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << a); ++m)
    if (__builtin_popcountll(m) == b) out.push_back(m);
  return out;
}

// Visits every a:b coloring (as per-vertex color masks).
void for_each_fold(const Adjacency& g, int b, int a, const std::function<void(const std::vector<std::uint64_t>&)>& visit,
                   bool stop_at_first = false) {
  const int n = static_cast<int>(g.size());
  const auto options = subsets_of_size(a, b);
  std::vector<std::uint64_t> sets(static_cast<std::size_t>(n));
  bool done = false;
  std::function<void(int)> rec = [&](int v) {
    if (done) return;
    if (v == n) {
      visit(sets);
      if (stop_at_first) done = true;
      return;
    }
    for (auto s : options) {
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (g[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] && (sets[static_cast<std::size_t>(u)] & s)) ok = false;
      if (!ok) continue;
      sets[static_cast<std::size_t>(v)] = s;
      rec(v + 1);
    }
  };
  rec(0);
}

}  // namespace

int fold_chromatic_number(const Adjacency& g, int b) {
  for (int a = b;; ++a) {
    bool found = false;
    for_each_fold(g, b, a, [&](const auto&) { found = true; }, true);
    if (found) return a;
  }
}

double min_entropy_partition(const Adjacency& g, const std::vector<double>& p) {
  const int n = static_cast<int>(g.size());
  std::vector<std::uint64_t> nb(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (g[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) nb[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
  std::unordered_map<std::uint64_t, double> memo;
  std::function<double(std::uint64_t)> best = [&](std::uint64_t mask) -> double {
    if (mask == 0) return 0.0;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const int v = __builtin_ctzll(mask);
    double result = std::numeric_limits<double>::infinity();
    // Independent sets inside mask whose lowest vertex is v.
    std::function<void(std::uint64_t, std::uint64_t, double)> grow = [&](std::uint64_t chosen, std::uint64_t cand, double w) {
      double term = w > 0 ? -w * std::log2(w) : 0.0;
      result = std::min(result, term + best(mask & ~chosen));
      for (std::uint64_t c = cand; c; c &= c - 1) {
        int u = __builtin_ctzll(c);
        std::uint64_t rest = cand & ~((std::uint64_t{2} << u) - 1) & ~nb[static_cast<std::size_t>(u)];
        grow(chosen | std::uint64_t{1} << u, rest, w + p[static_cast<std::size_t>(u)]);
      }
    };
    std::uint64_t cand = mask & ~nb[static_cast<std::size_t>(v)] & ~((std::uint64_t{2} << v) - 1);
    grow(std::uint64_t{1} << v, cand, p[static_cast<std::size_t>(v)]);
    memo.emplace(mask, result);
    return result;
  };
  return best(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

double min_entropy_fold(const Adjacency& g, const std::vector<double>& p, int b, int a) {
  double best = std::numeric_limits<double>::infinity();
  for_each_fold(g, b, a, [&](const std::vector<std::uint64_t>& sets) {
    std::unordered_map<std::uint64_t, double> mass;
    for (std::size_t v = 0; v < sets.size(); ++v) mass[sets[v]] += p[v];
    std::vector<double> q;
    for (const auto& [s, w] : mass) q.push_back(w);
    best = std::min(best, entropy(q));
  });
  return best;
}

double huffman_cost(std::vector<double> p) {
  p.erase(std::remove(p.begin(), p.end(), 0.0), p.end());
  if (p.size() <= 1) return p.empty() ? 0.0 : 1.0;
  std::priority_queue<double, std::vector<double>, std::greater<>> q(p.begin(), p.end());
  double cost = 0;
  while (q.size() > 1) {
    double x = q.top();
    q.pop();
    double y = q.top();
    q.pop();
    cost += x + y;
    q.push(x + y);
  }
  return cost;
}

}  // namespace oracle
}  // namespace testing
