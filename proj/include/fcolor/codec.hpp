#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fcolor/budget.hpp"
#include "fcolor/coloring.hpp"
#include "fcolor/probability.hpp"
#include "fcolor/rational.hpp"

namespace fcolor {

struct CodebookEntry {
  std::string label;  // color-set label, e.g. "{2,7}"
  std::string bits;   // codeword as '0'/'1' text
  Rational prob;
};

/// Prefix-free binary code over color sets.
class Codebook {
 public:
  Codebook() = default;
  /// Throws InvalidInput if labels repeat, the codewords are not prefix-free
  /// or an empty codeword shares the code with others.
  explicit Codebook(std::vector<CodebookEntry> entries);

  const std::vector<CodebookEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  /// sum p * len, exact.
  const Rational& average_length() const { return average_length_; }

  const CodebookEntry* find_label(const std::string& label) const;
  const CodebookEntry* find_bits(const std::string& bits) const;

 private:
  std::vector<CodebookEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_label_;
  std::unordered_map<std::string, std::size_t> by_bits_;
  Rational average_length_;
};

/// Optimal prefix code by greedy merging of the two least probable nodes
/// (ties: earliest created), then canonical codewords assigned in
/// (length, descending probability, input order). Zero-probability outcomes
/// get no codeword; a single outcome gets the empty codeword.
Codebook build_codebook(const Pmf& p);

/// sum 2^-len over the codewords, exact.
Rational kraft_sum(const Codebook& c);
Rational kraft_sum(const std::vector<std::string>& codewords);
bool is_prefix_free(const std::vector<std::string>& codewords);

/// Index of an X1^n tuple among the vertices of G^n.
int block_vertex(const SourceModel& m, const std::vector<std::string>& symbols);

/// One color per replica: replica j takes the (j mod b)-th smallest color of
/// its vertex, stepping cyclically through its set past colors already taken.
std::vector<int> select_replica_colors(const FoldColoring& c, const std::vector<int>& replica_vertices);

/// Distribution of the transmitted color set when b replica blocks are drawn
/// independently from P(X1^n | X2^n) given one shared side block.
Pmf replica_distribution(const SourceModel& m, unsigned n, const FoldColoring& c,
                         const Budget& budget = {});

struct EncodeResult {
  std::string bits;
  std::string label;
  std::vector<int> replica_colors;
};

/// replicas: b blocks of n symbols. Throws InvalidInput for off-alphabet
/// symbols and DecodeError(kUnknownCodeword) when the set has no codeword.
EncodeResult encode(const SourceModel& m, unsigned n, const FoldColoring& c, const Codebook& book,
                    const std::vector<std::vector<std::string>>& replicas);

struct DecodedBlock {
  std::string label;
  std::vector<int> colors;
  std::vector<std::vector<std::string>> outcomes;       // per color, n function values
  std::vector<std::optional<std::string>> resolved;     // per color, unique support-consistent vertex
};

struct DecodeResult {
  std::vector<DecodedBlock> blocks;
  /// All recovered function values, block by block, color by color.
  std::vector<std::string> flat_outcomes() const;
};

/// Parses one codeword per side block of n symbols; block k uses
/// side[k n .. k n + n). Bits left over or missing are framing errors.
/// Never sees the source sequences: only bits, side information, coloring and model.
DecodeResult decode(const SourceModel& m, unsigned n, const FoldColoring& c, const Codebook& book,
                    const std::string& bits, const std::vector<std::string>& side);

struct ZeroErrorReport {
  bool ok = true;
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t bits_total = 0;
  double empirical_bits_per_outcome = 0.0;  // bits_total / (cases n b)
  Rational model_bits_per_outcome;          // sum P(case) len / (n b)
  std::string counterexample;               // first failing case in enumeration order
};

/// Exhaustive encode/decode over every support-consistent side block and
/// b-tuple of replica blocks.
ZeroErrorReport verify_zero_error(const SourceModel& m, unsigned n, const FoldColoring& c,
                                  const Codebook& book, const Budget& budget = {});

/// MSB-first packing behind an 8-byte big-endian bit-length header.
std::vector<std::uint8_t> pack_bits(const std::string& bits);
std::string unpack_bits(const std::vector<std::uint8_t>& bytes);

}  // namespace fcolor
