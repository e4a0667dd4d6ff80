#include "fcolor/probability.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fcolor/error.hpp"

namespace fcolor {
namespace {

std::unordered_map<std::string, std::size_t> index_alphabet(const std::vector<std::string>& symbols,
                                                            const char* what) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].empty()) throw InvalidInput(std::string(what) + ": empty symbol at position " + std::to_string(i));
    if (symbols[i].find(',') != std::string::npos)
      throw InvalidInput(std::string(what) + ": symbol \"" + symbols[i] + "\" contains ','");
    if (!index.emplace(symbols[i], i).second)
      throw InvalidInput(std::string(what) + ": duplicate symbol \"" + symbols[i] + "\"");
  }
  return index;
}

long long parse_integer_symbol(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw InvalidInput("builtin function needs integer symbols, got \"" + s + "\"");
  return v;
}

double plogp_sum(auto begin, auto end) {
  double h = 0.0;
  for (auto it = begin; it != end; ++it) {
    double p = *it;
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

Pmf::Pmf(std::vector<std::string> outcomes, std::vector<Rational> probs)
    : outcomes_(std::move(outcomes)), probs_(std::move(probs)) {
  if (outcomes_.size() != probs_.size())
    throw InvalidInput("pmf: " + std::to_string(outcomes_.size()) + " outcomes but " +
                       std::to_string(probs_.size()) + " probabilities");
  Rational total = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    probs_[i].canonicalize();
    if (probs_[i] < 0) throw InvalidInput("pmf: negative probability for \"" + outcomes_[i] + "\"");
    total += probs_[i];
    if (!index_.emplace(outcomes_[i], i).second)
      throw InvalidInput("pmf: duplicate outcome \"" + outcomes_[i] + "\"");
  }
  if (total != 1) throw InvalidInput("pmf: probabilities sum to " + to_string(total) + ", not 1");
}

Rational Pmf::prob(const std::string& outcome) const {
  auto it = index_.find(outcome);
  return it == index_.end() ? Rational(0) : probs_[it->second];
}

std::size_t Pmf::index_of(const std::string& outcome) const {
  auto it = index_.find(outcome);
  if (it == index_.end()) throw InvalidInput("pmf: unknown outcome \"" + outcome + "\"");
  return it->second;
}

std::size_t Pmf::support_size() const {
  return static_cast<std::size_t>(std::count_if(probs_.begin(), probs_.end(), [](const Rational& p) { return p > 0; }));
}

SourceModel::SourceModel(std::vector<std::string> x1_alphabet, std::vector<std::string> x2_alphabet,
                         std::vector<std::vector<Rational>> joint_pmf,
                         std::vector<std::vector<std::string>> function_table)
    : x1_(std::move(x1_alphabet)),
      x2_(std::move(x2_alphabet)),
      joint_(std::move(joint_pmf)),
      f_(std::move(function_table)) {
  if (x1_.empty()) throw InvalidInput("x1_alphabet: must not be empty");
  if (x2_.empty()) throw InvalidInput("x2_alphabet: must not be empty");
  x1_index_ = index_alphabet(x1_, "x1_alphabet");
  x2_index_ = index_alphabet(x2_, "x2_alphabet");

  if (joint_.size() != x1_.size())
    throw InvalidInput("joint_pmf: expected " + std::to_string(x1_.size()) + " rows, got " +
                       std::to_string(joint_.size()));
  Rational total = 0;
  for (std::size_t i = 0; i < joint_.size(); ++i) {
    if (joint_[i].size() != x2_.size())
      throw InvalidInput("joint_pmf[" + std::to_string(i) + "]: expected " + std::to_string(x2_.size()) +
                         " entries, got " + std::to_string(joint_[i].size()));
    for (std::size_t j = 0; j < joint_[i].size(); ++j) {
      joint_[i][j].canonicalize();
      if (joint_[i][j] < 0)
        throw InvalidInput("joint_pmf[" + std::to_string(i) + "][" + std::to_string(j) + "]: negative probability");
      total += joint_[i][j];
    }
  }
  if (total != 1) throw InvalidInput("joint_pmf: entries sum to " + to_string(total) + ", not 1");

  if (f_.size() != x1_.size())
    throw InvalidInput("function: expected " + std::to_string(x1_.size()) + " rows, got " + std::to_string(f_.size()));
  for (std::size_t i = 0; i < f_.size(); ++i)
    if (f_[i].size() != x2_.size())
      throw InvalidInput("function[" + std::to_string(i) + "]: expected " + std::to_string(x2_.size()) +
                         " entries, got " + std::to_string(f_[i].size()));
}

std::size_t SourceModel::x1_index(const std::string& symbol) const {
  auto it = x1_index_.find(symbol);
  if (it == x1_index_.end()) throw InvalidInput("unknown x1 symbol \"" + symbol + "\"");
  return it->second;
}

std::size_t SourceModel::x2_index(const std::string& symbol) const {
  auto it = x2_index_.find(symbol);
  if (it == x2_index_.end()) throw InvalidInput("unknown x2 symbol \"" + symbol + "\"");
  return it->second;
}

std::vector<std::vector<std::string>> builtin_table(BuiltinFunction fn, const std::vector<std::string>& x1_alphabet,
                                                    const std::vector<std::string>& x2_alphabet) {
  std::vector<std::vector<std::string>> table(x1_alphabet.size(), std::vector<std::string>(x2_alphabet.size()));
  for (std::size_t i = 0; i < x1_alphabet.size(); ++i) {
    long long u = parse_integer_symbol(x1_alphabet[i]);
    for (std::size_t j = 0; j < x2_alphabet.size(); ++j) {
      long long v = parse_integer_symbol(x2_alphabet[j]);
      long long r = 0;
      switch (fn) {
        case BuiltinFunction::kSum: r = u + v; break;
        case BuiltinFunction::kProduct: r = u * v; break;
        case BuiltinFunction::kIdentity: r = u; break;
      }
      table[i][j] = std::to_string(r);
    }
  }
  return table;
}

double shannon_entropy(std::span<const double> probs) { return plogp_sum(probs.begin(), probs.end()); }

double shannon_entropy(std::span<const Rational> probs) {
  std::vector<double> p;
  p.reserve(probs.size());
  for (const auto& r : probs) p.push_back(r.get_d());
  std::sort(p.begin(), p.end());
  return shannon_entropy(std::span<const double>(p));
}

double shannon_entropy(const Pmf& p) { return shannon_entropy(std::span<const Rational>(p.probs())); }

Pmf marginal_x1(const SourceModel& m) {
  std::vector<Rational> probs(m.x1_size(), Rational(0));
  for (std::size_t i = 0; i < m.x1_size(); ++i)
    for (std::size_t j = 0; j < m.x2_size(); ++j) probs[i] += m.p(i, j);
  return Pmf(m.x1_alphabet(), std::move(probs));
}

Pmf marginal_x2(const SourceModel& m) {
  std::vector<Rational> probs(m.x2_size(), Rational(0));
  for (std::size_t i = 0; i < m.x1_size(); ++i)
    for (std::size_t j = 0; j < m.x2_size(); ++j) probs[j] += m.p(i, j);
  return Pmf(m.x2_alphabet(), std::move(probs));
}

std::vector<std::string> conditional_support(const SourceModel& m, const std::string& x2) {
  std::size_t j = m.x2_index(x2);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.x1_size(); ++i)
    if (m.p(i, j) > 0) out.push_back(m.x1_alphabet()[i]);
  return out;
}

double conditional_entropy(const std::vector<std::vector<Rational>>& joint) {
  std::vector<Rational> flat;
  std::vector<Rational> column;
  Rational total = 0;
  for (const auto& row : joint) {
    if (row.size() != (joint.empty() ? 0 : joint.front().size()))
      throw InvalidInput("conditional_entropy: ragged joint matrix");
    if (column.empty()) column.assign(row.size(), Rational(0));
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < 0) throw InvalidInput("conditional_entropy: negative probability");
      flat.push_back(row[j]);
      column[j] += row[j];
      total += row[j];
    }
  }
  if (total != 1) throw InvalidInput("conditional_entropy: joint does not sum to 1");
  return shannon_entropy(std::span<const Rational>(flat)) - shannon_entropy(std::span<const Rational>(column));
}

}  // namespace fcolor
