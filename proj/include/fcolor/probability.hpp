#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fcolor/rational.hpp"

namespace fcolor {

/// A finite distribution with labeled outcomes and exact probabilities.
class Pmf {
 public:
  Pmf() = default;
  /// Throws InvalidInput unless sizes match, labels are unique, every
  /// probability is >= 0 and the total is exactly 1.
  Pmf(std::vector<std::string> outcomes, std::vector<Rational> probs);

  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<Rational>& probs() const { return probs_; }
  std::size_t size() const { return outcomes_.size(); }

  /// Probability of a label; 0 for labels not listed.
  Rational prob(const std::string& outcome) const;
  /// Index of a label; throws InvalidInput for unknown labels.
  std::size_t index_of(const std::string& outcome) const;

  std::size_t support_size() const;

 private:
  std::vector<std::string> outcomes_;
  std::vector<Rational> probs_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Source alphabets, joint pmf P(x1, x2) and a total function table f(x1, x2).
class SourceModel {
 public:
  SourceModel(std::vector<std::string> x1_alphabet, std::vector<std::string> x2_alphabet,
              std::vector<std::vector<Rational>> joint_pmf,
              std::vector<std::vector<std::string>> function_table);

  const std::vector<std::string>& x1_alphabet() const { return x1_; }
  const std::vector<std::string>& x2_alphabet() const { return x2_; }
  const std::vector<std::vector<Rational>>& joint_pmf() const { return joint_; }
  const std::vector<std::vector<std::string>>& function_table() const { return f_; }

  std::size_t x1_size() const { return x1_.size(); }
  std::size_t x2_size() const { return x2_.size(); }

  const Rational& p(std::size_t i1, std::size_t i2) const { return joint_[i1][i2]; }
  const std::string& f(std::size_t i1, std::size_t i2) const { return f_[i1][i2]; }

  std::size_t x1_index(const std::string& symbol) const;
  std::size_t x2_index(const std::string& symbol) const;

 private:
  std::vector<std::string> x1_;
  std::vector<std::string> x2_;
  std::vector<std::vector<Rational>> joint_;
  std::vector<std::vector<std::string>> f_;
  std::unordered_map<std::string, std::size_t> x1_index_;
  std::unordered_map<std::string, std::size_t> x2_index_;
};

/// Builtin function tables over integer-valued symbols.
enum class BuiltinFunction { kSum, kProduct, kIdentity };

/// Evaluates a builtin over the alphabet product; symbols must parse as integers.
std::vector<std::vector<std::string>> builtin_table(BuiltinFunction fn,
                                                    const std::vector<std::string>& x1_alphabet,
                                                    const std::vector<std::string>& x2_alphabet);

/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy(const Pmf& p);
double shannon_entropy(std::span<const Rational> probs);
/// Same on floating weights; the weights are assumed to sum to 1.
double shannon_entropy(std::span<const double> probs);

Pmf marginal_x1(const SourceModel& m);
Pmf marginal_x2(const SourceModel& m);

/// {x1 : P(x1, x2) > 0}, in alphabet order. Throws InvalidInput for unknown x2.
std::vector<std::string> conditional_support(const SourceModel& m, const std::string& x2);

/// H(A|B) = H(A,B) - H(B) for a joint matrix with rows indexed by A and
/// columns by B (the conditioner). Entries must form a valid pmf.
double conditional_entropy(const std::vector<std::vector<Rational>>& joint);

}  // namespace fcolor
