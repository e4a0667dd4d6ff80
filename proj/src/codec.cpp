#include "fcolor/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "fcolor/chargraph.hpp"
#include "fcolor/error.hpp"

namespace fcolor {
namespace {

std::size_t ipow(std::size_t base, unsigned exp) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<std::size_t> digits_of(std::size_t index, std::size_t base, unsigned n) {
  std::vector<std::size_t> d(n);
  for (unsigned i = n; i-- > 0;) {
    d[i] = index % base;
    index /= base;
  }
  return d;
}

// Per side block: the on-support X1^n blocks with their joint probability.
struct SideBlock {
  std::size_t index = 0;
  std::vector<std::size_t> digits;
  Rational prob;
  std::vector<std::pair<int, Rational>> support;  // (vertex, P(vertex, side))
};

std::vector<SideBlock> side_blocks(const SourceModel& m, unsigned n, const Budget& budget) {
  const std::size_t k1 = m.x1_size();
  const std::size_t k2 = m.x2_size();
  const double pairs = std::pow(static_cast<double>(k1 * k2), n);
  if (pairs > static_cast<double>(budget.codec_cases))
    throw BudgetExceeded("codec: " + std::to_string(static_cast<std::uint64_t>(pairs)) +
                         " block pairs exceed the case budget " + std::to_string(budget.codec_cases));
  const std::size_t blocks1 = ipow(k1, n);
  const std::size_t blocks2 = ipow(k2, n);
  std::vector<SideBlock> out;
  for (std::size_t w = 0; w < blocks2; ++w) {
    SideBlock sb;
    sb.index = w;
    sb.digits = digits_of(w, k2, n);
    for (std::size_t v = 0; v < blocks1; ++v) {
      auto d = digits_of(v, k1, n);
      Rational p = 1;
      for (unsigned i = 0; i < n && p != 0; ++i) p *= m.p(d[i], sb.digits[i]);
      if (p == 0) continue;
      sb.support.emplace_back(static_cast<int>(v), p);
      sb.prob += p;
    }
    if (sb.prob != 0) out.push_back(std::move(sb));
  }
  return out;
}

// Calls fn(tuple) for every b-tuple of indices into [0, size), lexicographically.
template <typename Fn>
void for_each_tuple(std::size_t size, int b, Fn&& fn) {
  if (size == 0) return;
  std::vector<std::size_t> idx(static_cast<std::size_t>(b), 0);
  while (true) {
    fn(idx);
    int i = b - 1;
    while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == size) idx[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

std::string set_label_of(const FoldColoring& c, const std::vector<int>& vertices) {
  auto colors = select_replica_colors(c, vertices);
  std::sort(colors.begin(), colors.end());
  return color_set_label(colors);
}

}  // namespace

Codebook::Codebook(std::vector<CodebookEntry> entries) : entries_(std::move(entries)) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.bits.find_first_not_of("01") != std::string::npos)
      throw InvalidInput("codebook entry \"" + e.label + "\": codeword must be a 0/1 string");
    if (e.bits.empty() && entries_.size() > 1)
      throw InvalidInput("codebook entry \"" + e.label + "\": only a one-entry code may use the empty codeword");
    if (e.prob < 0) throw InvalidInput("codebook entry \"" + e.label + "\": negative probability");
    if (!by_label_.emplace(e.label, i).second) throw InvalidInput("codebook: duplicate label \"" + e.label + "\"");
    if (!by_bits_.emplace(e.bits, i).second) throw InvalidInput("codebook: duplicate codeword " + e.bits);
    words.push_back(e.bits);
    average_length_ += e.prob * static_cast<long>(e.bits.size());
  }
  if (!is_prefix_free(words)) throw InvalidInput("codebook: codewords are not prefix-free");
}

const CodebookEntry* Codebook::find_label(const std::string& label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? nullptr : &entries_[it->second];
}

const CodebookEntry* Codebook::find_bits(const std::string& bits) const {
  auto it = by_bits_.find(bits);
  return it == by_bits_.end() ? nullptr : &entries_[it->second];
}

Codebook build_codebook(const Pmf& p) {
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.probs()[i] > 0) live.push_back(i);
  if (live.empty()) throw InvalidInput("build_codebook: no outcome has positive probability");

  std::vector<unsigned> length(live.size(), 0);
  if (live.size() > 1) {
    struct Node {
      Rational prob;
      std::size_t id;
      int left = -1, right = -1;
    };
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < live.size(); ++i) nodes.push_back(Node{p.probs()[live[i]], i});
    auto later = [&](std::size_t x, std::size_t y) {
      if (nodes[x].prob != nodes[y].prob) return nodes[x].prob > nodes[y].prob;
      return nodes[x].id > nodes[y].id;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> heap(later);
    for (std::size_t i = 0; i < nodes.size(); ++i) heap.push(i);
    while (heap.size() > 1) {
      std::size_t x = heap.top();
      heap.pop();
      std::size_t y = heap.top();
      heap.pop();
      nodes.push_back(Node{nodes[x].prob + nodes[y].prob, nodes.size(), static_cast<int>(x), static_cast<int>(y)});
      heap.push(nodes.size() - 1);
    }
    std::vector<std::pair<std::size_t, unsigned>> stack{{heap.top(), 0}};
    while (!stack.empty()) {
      auto [id, depth] = stack.back();
      stack.pop_back();
      if (nodes[id].left < 0) {
        length[id] = depth;
        continue;
      }
      stack.emplace_back(static_cast<std::size_t>(nodes[id].left), depth + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes[id].right), depth + 1);
    }
  }

  std::vector<std::size_t> order(live.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (length[x] != length[y]) return length[x] < length[y];
    return p.probs()[live[x]] > p.probs()[live[y]];
  });

  std::vector<CodebookEntry> entries;
  mpz_class code = 0;
  unsigned prev = length[order[0]];
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (k > 0) {
      ++code;
      code <<= length[i] - prev;
    }
    prev = length[i];
    std::string bits;
    if (length[i] > 0) {
      bits = code.get_str(2);
      bits.insert(0, length[i] - bits.size(), '0');
    }
    entries.push_back(CodebookEntry{p.outcomes()[live[i]], bits, p.probs()[live[i]]});
  }
  return Codebook(std::move(entries));
}

Rational kraft_sum(const std::vector<std::string>& codewords) {
  Rational sum = 0;
  for (const auto& w : codewords) sum += pow2_neg(static_cast<unsigned>(w.size()));
  return sum;
}

Rational kraft_sum(const Codebook& c) {
  std::vector<std::string> words;
  for (const auto& e : c.entries()) words.push_back(e.bits);
  return kraft_sum(words);
}

bool is_prefix_free(const std::vector<std::string>& codewords) {
  std::vector<std::string> sorted = codewords;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].compare(0, sorted[i - 1].size(), sorted[i - 1]) == 0) return false;
  return true;
}

int block_vertex(const SourceModel& m, const std::vector<std::string>& symbols) {
  std::size_t index = 0;
  for (const auto& s : symbols) index = index * m.x1_size() + m.x1_index(s);
  return static_cast<int>(index);
}

std::vector<int> select_replica_colors(const FoldColoring& c, const std::vector<int>& replica_vertices) {
  const int b = c.b();
  if (static_cast<int>(replica_vertices.size()) != b)
    throw InvalidInput("expected " + std::to_string(b) + " replica blocks, got " + std::to_string(replica_vertices.size()));
  std::vector<int> chosen;
  for (int j = 0; j < b; ++j) {
    const int v = replica_vertices[static_cast<std::size_t>(j)];
    if (v < 0 || static_cast<std::size_t>(v) >= c.vertex_count()) throw InvalidInput("replica vertex out of range");
    const auto& set = c.colors_of(v);
    for (int step = 0; step < b; ++step) {
      int color = set[static_cast<std::size_t>((j + step) % b)];
      if (std::find(chosen.begin(), chosen.end(), color) == chosen.end()) {
        chosen.push_back(color);
        break;
      }
    }
  }
  return chosen;
}

Pmf replica_distribution(const SourceModel& m, unsigned n, const FoldColoring& c, const Budget& budget) {
  const int b = c.b();
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Rational> probs;
  std::uint64_t cases = 0;
  for (const auto& sb : side_blocks(m, n, budget)) {
    for_each_tuple(sb.support.size(), b, [&](const std::vector<std::size_t>& idx) {
      if (++cases > budget.codec_cases) throw BudgetExceeded("replica_distribution: case budget exceeded");
      std::vector<int> vertices;
      Rational p = sb.prob;
      for (auto i : idx) {
        vertices.push_back(sb.support[i].first);
        p *= sb.support[i].second / sb.prob;
      }
      auto label = set_label_of(c, vertices);
      auto [it, inserted] = index.emplace(label, labels.size());
      if (inserted) {
        labels.push_back(label);
        probs.emplace_back(0);
      }
      probs[it->second] += p;
    });
  }
  return Pmf(std::move(labels), std::move(probs));
}

EncodeResult encode(const SourceModel& m, unsigned n, const FoldColoring& c, const Codebook& book,
                    const std::vector<std::vector<std::string>>& replicas) {
  std::vector<int> vertices;
  for (const auto& block : replicas) {
    if (block.size() != n)
      throw InvalidInput("replica block has " + std::to_string(block.size()) + " symbols, expected " + std::to_string(n));
    vertices.push_back(block_vertex(m, block));
  }
  EncodeResult out;
  out.replica_colors = select_replica_colors(c, vertices);
  auto sorted = out.replica_colors;
  std::sort(sorted.begin(), sorted.end());
  out.label = color_set_label(sorted);
  const auto* entry = book.find_label(out.label);
  if (!entry) throw DecodeError(DecodeError::Kind::kUnknownCodeword, "color set " + out.label + " has no codeword");
  out.bits = entry->bits;
  return out;
}

std::vector<std::string> DecodeResult::flat_outcomes() const {
  std::vector<std::string> out;
  for (const auto& block : blocks)
    for (const auto& per_color : block.outcomes) out.insert(out.end(), per_color.begin(), per_color.end());
  return out;
}

DecodeResult decode(const SourceModel& m, unsigned n, const FoldColoring& c, const Codebook& book,
                    const std::string& bits, const std::vector<std::string>& side) {
  using Kind = DecodeError::Kind;
  if (bits.find_first_not_of("01") != std::string::npos) throw InvalidInput("bitstring may contain only 0 and 1");
  std::size_t max_len = 0;
  for (const auto& e : book.entries()) max_len = std::max(max_len, e.bits.size());

  if (side.size() % n != 0)
    throw DecodeError(Kind::kFraming, std::to_string(side.size()) + " side symbols do not split into blocks of " +
                                          std::to_string(n));
  const std::size_t expected = side.size() / n;

  // The side sequence fixes the block count, so a one-entry code may be empty.
  std::vector<std::string> labels;
  std::size_t pos = 0;
  while (labels.size() < expected) {
    std::string current;
    const CodebookEntry* e = book.find_bits(current);
    while (!e) {
      if (current.size() >= max_len)
        throw DecodeError(Kind::kUnknownCodeword, "no codeword matches " + current);
      if (pos == bits.size())
        throw DecodeError(Kind::kFraming, "bitstream ends inside codeword " + std::to_string(labels.size()) + " of " +
                                              std::to_string(expected));
      current.push_back(bits[pos++]);
      e = book.find_bits(current);
    }
    labels.push_back(e->label);
  }
  if (pos != bits.size())
    throw DecodeError(Kind::kFraming, std::to_string(bits.size() - pos) + " bits left after " +
                                          std::to_string(expected) + " codewords");

  const auto classes = c.class_map();
  const std::size_t k1 = m.x1_size();
  DecodeResult result;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    std::vector<std::size_t> x2(n);
    for (unsigned i = 0; i < n; ++i) x2[i] = m.x2_index(side[k * n + i]);
    DecodedBlock block;
    block.label = labels[k];
    block.colors = parse_color_set_label(labels[k]);
    for (int color : block.colors) {
      if (color < 0 || color >= c.a()) throw DecodeError(Kind::kInvariantViolation, "color id out of range");
      const auto& members = classes[static_cast<std::size_t>(color)];
      std::vector<std::string> values(n);
      std::vector<int> fully_supported;
      std::vector<std::vector<std::size_t>> member_digits;
      for (int u : members) member_digits.push_back(digits_of(static_cast<std::size_t>(u), k1, n));
      for (unsigned i = 0; i < n; ++i) {
        const std::string* value = nullptr;
        for (const auto& d : member_digits) {
          if (m.p(d[i], x2[i]) == 0) continue;
          const std::string& f = m.f(d[i], x2[i]);
          if (!value) value = &f;
          else if (*value != f)
            throw DecodeError(Kind::kInvariantViolation, "color " + std::to_string(color) + " mixes f values " +
                                                             *value + " and " + f + " at coordinate " + std::to_string(i));
        }
        if (!value)
          throw DecodeError(Kind::kModelInconsistency, "color " + std::to_string(color) + " has no member on the support of side symbol " +
                                                           side[k * n + i]);
        values[i] = *value;
      }
      for (std::size_t t = 0; t < members.size(); ++t) {
        bool on = true;
        for (unsigned i = 0; i < n && on; ++i) on = m.p(member_digits[t][i], x2[i]) != 0;
        if (on) fully_supported.push_back(members[t]);
      }
      block.outcomes.push_back(std::move(values));
      if (fully_supported.size() == 1) {
        std::vector<std::string> symbols;
        for (auto d : member_digits[static_cast<std::size_t>(std::find(members.begin(), members.end(), fully_supported[0]) - members.begin())])
          symbols.push_back(m.x1_alphabet()[d]);
        block.resolved.emplace_back(join_tuple_label(symbols));
      } else {
        block.resolved.emplace_back(std::nullopt);
      }
    }
    result.blocks.push_back(std::move(block));
  }
  return result;
}

ZeroErrorReport verify_zero_error(const SourceModel& m, unsigned n, const FoldColoring& c, const Codebook& book,
                                  const Budget& budget) {
  const int b = c.b();
  const std::size_t k1 = m.x1_size();
  ZeroErrorReport report;
  Rational expected_bits = 0;
  for (const auto& sb : side_blocks(m, n, budget)) {
    std::vector<std::string> side;
    for (auto d : sb.digits) side.push_back(m.x2_alphabet()[d]);
    for_each_tuple(sb.support.size(), b, [&](const std::vector<std::size_t>& idx) {
      if (++report.cases > budget.codec_cases) throw BudgetExceeded("verify_zero_error: case budget exceeded");
      std::vector<std::vector<std::string>> replicas;
      std::vector<std::vector<std::string>> truth;
      Rational p = sb.prob;
      for (auto i : idx) {
        auto d = digits_of(static_cast<std::size_t>(sb.support[i].first), k1, n);
        std::vector<std::string> symbols, values;
        for (unsigned t = 0; t < n; ++t) {
          symbols.push_back(m.x1_alphabet()[d[t]]);
          values.push_back(m.f(d[t], sb.digits[t]));
        }
        replicas.push_back(std::move(symbols));
        truth.push_back(std::move(values));
        p *= sb.support[i].second / sb.prob;
      }
      bool ok = true;
      std::string detail;
      try {
        auto enc = encode(m, n, c, book, replicas);
        report.bits_total += enc.bits.size();
        expected_bits += p * static_cast<long>(enc.bits.size());
        auto dec = decode(m, n, c, book, enc.bits, side);
        auto got = dec.blocks.at(0).outcomes;
        std::sort(got.begin(), got.end());
        std::sort(truth.begin(), truth.end());
        ok = got == truth;
        if (!ok) detail = "decoded outcomes differ";
      } catch (const Error& e) {
        ok = false;
        detail = e.what();
      }
      if (!ok) {
        ++report.mismatches;
        if (report.counterexample.empty()) {
          std::ostringstream os;
          os << "side=(" << join_tuple_label(side) << ") replicas=";
          for (std::size_t j = 0; j < replicas.size(); ++j) os << (j ? ";" : "") << "(" << join_tuple_label(replicas[j]) << ")";
          os << ": " << detail;
          report.counterexample = os.str();
        }
      }
    });
  }
  report.ok = report.mismatches == 0;
  const double outcomes = static_cast<double>(report.cases) * n * b;
  report.empirical_bits_per_outcome = outcomes > 0 ? static_cast<double>(report.bits_total) / outcomes : 0.0;
  report.model_bits_per_outcome = expected_bits / Rational(static_cast<long>(n) * b);
  return report;
}

std::vector<std::uint8_t> pack_bits(const std::string& bits) {
  if (bits.find_first_not_of("01") != std::string::npos) throw InvalidInput("bitstring may contain only 0 and 1");
  std::vector<std::uint8_t> out(8 + (bits.size() + 7) / 8, 0);
  std::uint64_t count = bits.size();
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(count & 0xFF);
    count >>= 8;
  }
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1') out[8 + i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  return out;
}

std::string unpack_bits(const std::vector<std::uint8_t>& bytes) {
  using Kind = DecodeError::Kind;
  if (bytes.size() < 8) throw DecodeError(Kind::kFraming, "packed stream shorter than its 8-byte header");
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < 8; ++i) count = (count << 8) | bytes[i];
  if (bytes.size() - 8 != (count + 7) / 8)
    throw DecodeError(Kind::kFraming, "header announces " + std::to_string(count) + " bits but the payload has " +
                                          std::to_string(bytes.size() - 8) + " bytes");
  std::string bits;
  bits.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) bits.push_back((bytes[8 + i / 8] >> (7 - i % 8)) & 1U ? '1' : '0');
  for (std::uint64_t i = count; i < (bytes.size() - 8) * 8; ++i)
    if ((bytes[8 + i / 8] >> (7 - i % 8)) & 1U) throw DecodeError(Kind::kFraming, "nonzero padding bits");
  return bits;
}

}  // namespace fcolor
