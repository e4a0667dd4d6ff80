#include "fcolor/fcolor.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "fcolor/chargraph.hpp"
#include "fcolor/codec.hpp"
#include "fcolor/error.hpp"
#include "fcolor/instance.hpp"
#include "fcolor/results.hpp"

struct fcolor_model {
  fcolor::SourceModel model;
};

struct fcolor_config {
  fcolor::RateOptions options;
};

namespace {

using fcolor::Json;

thread_local std::string last_error;

template <typename Fn>
fcolor_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return FCOLOR_OK;
  } catch (const fcolor::InvalidInput& e) {
    last_error = e.what();
    return FCOLOR_ERR_INVALID_INPUT;
  } catch (const fcolor::BudgetExceeded& e) {
    last_error = e.what();
    return FCOLOR_ERR_BUDGET;
  } catch (const fcolor::Infeasible& e) {
    last_error = e.what();
    return FCOLOR_ERR_INFEASIBLE;
  } catch (const fcolor::DecodeError& e) {
    last_error = e.what();
    return FCOLOR_ERR_DECODE;
  } catch (const fcolor::Undefined& e) {
    last_error = e.what();
    return FCOLOR_ERR_UNDEFINED;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return FCOLOR_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FCOLOR_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return FCOLOR_ERR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(Json doc, char** out) {
  Json wrapped = {{"schema", fcolor::kResultsSchema}};
  for (auto& [key, value] : doc.items()) wrapped[key] = std::move(value);
  *out = copy_string(wrapped.dump(2) + "\n");
}

const fcolor::RateOptions& options_of(const fcolor_config* config) {
  static const fcolor::RateOptions defaults = [] {
    fcolor::RateOptions o;
    o.budget = fcolor::Budget::from_environment();
    return o;
  }();
  return config ? config->options : defaults;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    auto first = item.find_first_not_of(" \t");
    auto last = item.find_last_not_of(" \t");
    out.push_back(first == std::string::npos ? std::string() : item.substr(first, last - first + 1));
  }
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

fcolor::FoldColoring entropy_coloring(const fcolor::Graph& g, const fcolor::Pmf& pmf, int b, int a,
                                      const fcolor::Budget& budget, fcolor::EntropyColoring* details) {
  fcolor::EntropyColoringOptions opts;
  if (a <= 0) {
    if (b == 1) {
      a = static_cast<int>(g.size());
    } else {
      auto fold = fcolor::bfold_chromatic_number(g, b, budget);
      a = fold.a;
      opts.seed = fold.coloring;
    }
  }
  auto r = fcolor::min_entropy_coloring(g, pmf, b, a, budget, opts);
  if (details) *details = r;
  return r.coloring;
}

}  // namespace

extern "C" {

const char* fcolor_version(void) { return "0.1.0"; }

const char* fcolor_status_name(fcolor_status status) {
  switch (status) {
    case FCOLOR_OK: return "ok";
    case FCOLOR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FCOLOR_ERR_INVALID_INPUT: return "invalid input";
    case FCOLOR_ERR_BUDGET: return "budget exceeded";
    case FCOLOR_ERR_INFEASIBLE: return "infeasible";
    case FCOLOR_ERR_DECODE: return "decode error";
    case FCOLOR_ERR_UNDEFINED: return "undefined";
    case FCOLOR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fcolor_last_error(void) { return last_error.c_str(); }

void fcolor_string_free(char* s) { std::free(s); }

void fcolor_bytes_free(unsigned char* bytes) { std::free(bytes); }

fcolor_status fcolor_model_load_file(const char* path, fcolor_model** out) {
  return guarded([&] {
    require(path && out, "fcolor_model_load_file: null argument");
    *out = new fcolor_model{fcolor::load_instance(path)};
  });
}

fcolor_status fcolor_model_load_json(const char* json, fcolor_model** out) {
  return guarded([&] {
    require(json && out, "fcolor_model_load_json: null argument");
    *out = new fcolor_model{fcolor::parse_instance(json)};
  });
}

fcolor_status fcolor_model_to_json(const fcolor_model* model, char** out_json) {
  return guarded([&] {
    require(model && out_json, "fcolor_model_to_json: null argument");
    *out_json = copy_string(fcolor::instance_to_json(model->model) + "\n");
  });
}

void fcolor_model_free(fcolor_model* model) { delete model; }

fcolor_status fcolor_config_new(fcolor_config** out) {
  return guarded([&] {
    require(out, "fcolor_config_new: null argument");
    auto* config = new fcolor_config{};
    try {
      config->options.budget = fcolor::Budget::from_environment();
    } catch (...) {
      delete config;
      throw;
    }
    *out = config;
  });
}

fcolor_status fcolor_config_set_budget(fcolor_config* config, const char* overrides) {
  return guarded([&] {
    require(config && overrides, "fcolor_config_set_budget: null argument");
    fcolor::Budget b = config->options.budget;
    b.apply_overrides(overrides);
    config->options.budget = b;
  });
}

fcolor_status fcolor_config_set_threads(fcolor_config* config, unsigned threads) {
  return guarded([&] {
    require(config, "fcolor_config_set_threads: null config");
    require(threads >= 1, "fcolor_config_set_threads: threads must be at least 1");
    config->options.threads = threads;
  });
}

fcolor_status fcolor_config_set_b_star_bound(fcolor_config* config, int bound) {
  return guarded([&] {
    require(config, "fcolor_config_set_b_star_bound: null config");
    require(bound >= 1, "fcolor_config_set_b_star_bound: bound must be at least 1");
    config->options.b_star_search_bound = bound;
  });
}

fcolor_status fcolor_config_to_json(const fcolor_config* config, char** out_json) {
  return guarded([&] {
    require(config && out_json, "fcolor_config_to_json: null argument");
    const auto& o = config->options;
    const auto& b = o.budget;
    emit({{"threads", o.threads},
          {"b_star_search_bound", o.b_star_search_bound},
          {"budget",
           {{"power", b.power_vertices},
            {"all_sets", b.all_sets_vertices},
            {"maximal_sets", b.maximal_sets_vertices},
            {"sets", b.independent_sets},
            {"ilp_columns", b.ilp_columns},
            {"ilp_nodes", b.ilp_nodes},
            {"entropy_vertices", b.entropy_vertices},
            {"entropy_nodes", b.entropy_nodes},
            {"codec_cases", b.codec_cases}}}},
         out_json);
  });
}

void fcolor_config_free(fcolor_config* config) { delete config; }

fcolor_status fcolor_build(const fcolor_model* model, const fcolor_config* config, unsigned n, char** out_json) {
  return guarded([&] {
    require(model && out_json, "fcolor_build: null argument");
    require(n >= 1, "fcolor_build: n must be at least 1");
    const auto& opts = options_of(config);
    const auto& m = model->model;
    auto g = fcolor::characteristic_power_graph(m, n, opts.budget);

    Json sets = Json::object();
    if (g.size() <= opts.budget.all_sets_vertices) {
      try {
        sets["all"] = fcolor::enumerate_independent_sets(g, false, opts.budget).sets.size();
      } catch (const fcolor::BudgetExceeded&) {
        sets["all"] = nullptr;
      }
    } else {
      sets["all"] = nullptr;
    }
    sets["maximal"] = fcolor::enumerate_independent_sets(g, true, opts.budget).sets.size();

    Json doc = {{"n", n}, {"vertex_count", g.size()}, {"edge_count", g.edge_count()}, {"independent_sets", sets}};
    if (n == 1) {
      Json witnesses = Json::array();
      for (const auto& [u, v] : g.edges())
        witnesses.push_back({{"u", g.label(u)}, {"v", g.label(v)}, {"x2", *fcolor::confusable(m, g.label(u), g.label(v))}});
      doc["edge_witnesses"] = std::move(witnesses);
    }
    doc["graph"] = fcolor::to_json(g);
    emit(std::move(doc), out_json);
  });
}

fcolor_status fcolor_build_dot(const fcolor_model* model, const fcolor_config* config, unsigned n,
                               const char* coloring_json, char** out_dot) {
  return guarded([&] {
    require(model && out_dot, "fcolor_build_dot: null argument");
    require(n >= 1, "fcolor_build_dot: n must be at least 1");
    auto g = fcolor::characteristic_power_graph(model->model, n, options_of(config).budget);
    if (coloring_json) {
      Json j;
      try {
        j = Json::parse(coloring_json);
      } catch (const Json::parse_error& e) {
        throw fcolor::InvalidInput(std::string("coloring document is not valid JSON: ") + e.what());
      }
      if (j.contains("coloring")) j = j["coloring"];
      auto c = fcolor::coloring_from_json(j, g);
      *out_dot = copy_string(fcolor::export_dot(g, &c));
    } else {
      *out_dot = copy_string(fcolor::export_dot(g));
    }
  });
}

fcolor_status fcolor_color(const fcolor_model* model, const fcolor_config* config, unsigned n, int b,
                           fcolor_color_mode mode, int a, char** out_json) {
  return guarded([&] {
    require(model && out_json, "fcolor_color: null argument");
    require(n >= 1, "fcolor_color: n must be at least 1");
    require(b >= 1, "fcolor_color: b must be at least 1");
    require(a >= 0, "fcolor_color: a must be nonnegative");
    const auto& opts = options_of(config);
    const auto& m = model->model;
    auto g = fcolor::characteristic_power_graph(m, n, opts.budget);
    auto pmf = fcolor::block_pmf(m, n, opts.budget);

    Json doc = {{"n", n}, {"b", b}};
    if (mode == FCOLOR_CHROMATIC) {
      auto fold = fcolor::bfold_chromatic_number(g, b, opts.budget);
      doc["mode"] = "chromatic";
      doc["chi_b"] = fold.a;
      if (b == 1) doc["chi_dsatur"] = fcolor::chromatic_number(g, opts.budget);
      auto frac = fcolor::fractional_chromatic_number(g, opts.b_star_search_bound, opts.budget);
      doc["fractional"] = fcolor::to_json(frac, g);
      doc["coloring"] = fcolor::to_json(fold.coloring, g);
      doc["distribution"] = fcolor::to_json(fcolor::coloring_distribution(fold.coloring, pmf));
    } else if (mode == FCOLOR_MIN_ENTROPY) {
      fcolor::EntropyColoring r;
      auto c = entropy_coloring(g, pmf, b, a, opts.budget, &r);
      doc["mode"] = "min-entropy";
      doc["a"] = c.a();
      doc["entropy_bits"] = r.entropy;
      doc["entropy_per_symbol_replica"] = r.entropy / (static_cast<double>(n) * b);
      doc["lower_bound_bits"] = r.lower_bound;
      doc["optimal"] = r.optimal;
      doc["search_nodes"] = r.nodes;
      doc["conditional_entropy_bits"] = fcolor::conditional_color_entropy(m, n, c, opts.budget);
      doc["coloring"] = fcolor::to_json(c, g);
      doc["distribution"] = fcolor::to_json(fcolor::coloring_distribution(c, pmf));
    } else {
      throw std::invalid_argument("fcolor_color: unknown mode");
    }
    emit(std::move(doc), out_json);
  });
}

fcolor_status fcolor_dump_lp(const fcolor_model* model, const fcolor_config* config, unsigned n, int b,
                             char** out_json) {
  return guarded([&] {
    require(model && out_json, "fcolor_dump_lp: null argument");
    require(n >= 1 && b >= 1, "fcolor_dump_lp: n and b must be at least 1");
    const auto& opts = options_of(config);
    auto g = fcolor::characteristic_power_graph(model->model, n, opts.budget);
    auto program = fcolor::independent_set_program(g, fcolor::Rational(b), opts.budget);
    auto lp = fcolor::solve_lp(program);
    auto ilp = fcolor::solve_ilp(program, opts.budget);
    emit({{"n", n},
          {"b", b},
          {"program", fcolor::to_json(program)},
          {"lp", fcolor::to_json(lp, program)},
          {"ilp", fcolor::to_json(ilp, program)}},
         out_json);
  });
}

fcolor_status fcolor_rates(const fcolor_model* model, const fcolor_config* config, unsigned n, int b_max,
                           char** out_json) {
  return guarded([&] {
    require(model && out_json, "fcolor_rates: null argument");
    require(n >= 1, "fcolor_rates: n must be at least 1");
    require(b_max >= 1, "fcolor_rates: b_max must be at least 1");
    const auto& opts = options_of(config);
    const auto& m = model->model;
    auto g = fcolor::characteristic_power_graph(m, n, opts.budget);
    Json doc = {{"n", n}, {"b_max", b_max}};
    try {
      auto gap = fcolor::integrality_gap(m, n, b_max, opts);
      doc["gap"] = fcolor::to_json(gap, &g);
    } catch (const fcolor::Undefined& e) {
      auto frac = fcolor::fractional_chromatic_entropy_rate(m, n, b_max, opts);
      doc["gap"] = nullptr;
      doc["gap_error"] = e.what();
      doc["traditional"] = fcolor::to_json(frac.per_b.front(), &g);
      doc["fractional"] = fcolor::to_json(frac, &g);
    }
    emit(std::move(doc), out_json);
  });
}

fcolor_status fcolor_monotonicity(const fcolor_model* model, const fcolor_config* config, unsigned n_max, int b_max,
                                  char** out_json) {
  return guarded([&] {
    require(model && out_json, "fcolor_monotonicity: null argument");
    require(n_max >= 1 && b_max >= 1, "fcolor_monotonicity: n_max and b_max must be at least 1");
    auto table = fcolor::monotonicity_table(model->model, n_max, b_max, options_of(config));
    emit({{"n_max", n_max}, {"b_max", b_max}, {"table", fcolor::to_json(table)}}, out_json);
  });
}

fcolor_status fcolor_conjecture_bound(unsigned n, int b_star, const char* chi_f, double* out_value) {
  return guarded([&] {
    require(chi_f && out_value, "fcolor_conjecture_bound: null argument");
    *out_value = fcolor::conjecture_bound(n, b_star, fcolor::parse_rational(chi_f));
  });
}

fcolor_status fcolor_codec(const fcolor_model* model, const fcolor_config* config, unsigned n, int b,
                           const char* coloring_json, const char* side, const char* replicas, int verify,
                           char** out_json) {
  return guarded([&] {
    require(model && out_json, "fcolor_codec: null argument");
    require(n >= 1 && b >= 1, "fcolor_codec: n and b must be at least 1");
    const auto& opts = options_of(config);
    const auto& m = model->model;
    auto g = fcolor::characteristic_power_graph(m, n, opts.budget);
    auto pmf = fcolor::block_pmf(m, n, opts.budget);

    fcolor::FoldColoring c;
    if (coloring_json) {
      Json j;
      try {
        j = Json::parse(coloring_json);
      } catch (const Json::parse_error& e) {
        throw fcolor::InvalidInput(std::string("coloring document is not valid JSON: ") + e.what());
      }
      if (j.contains("coloring")) j = j["coloring"];
      c = fcolor::coloring_from_json(j, g);
      if (c.b() != b)
        throw fcolor::InvalidInput("coloring has b = " + std::to_string(c.b()) + ", expected " + std::to_string(b));
    } else {
      c = entropy_coloring(g, pmf, b, 0, opts.budget, nullptr);
    }

    auto dist = fcolor::replica_distribution(m, n, c, opts.budget);
    auto book = fcolor::build_codebook(dist);
    Json doc = {{"n", n}, {"b", b}, {"coloring", fcolor::to_json(c, g)}, {"distribution", fcolor::to_json(dist)}};
    doc["codebook"] = fcolor::to_json(book);
    doc["model_bits_per_outcome"] = {
        {"exact", fcolor::to_string(book.average_length() / fcolor::Rational(static_cast<long>(n) * b))},
        {"value", fcolor::to_double(book.average_length() / fcolor::Rational(static_cast<long>(n) * b))}};

    if (replicas && *replicas) {
      auto blocks = split(replicas, ';');
      if (blocks.size() % static_cast<std::size_t>(b) != 0)
        throw fcolor::InvalidInput("replicas: " + std::to_string(blocks.size()) + " blocks is not a multiple of b = " +
                                   std::to_string(b));
      std::vector<std::string> side_symbols = side && *side ? split(side, ',') : std::vector<std::string>{};
      const std::size_t codewords = blocks.size() / static_cast<std::size_t>(b);
      if (side_symbols.size() != codewords * n)
        throw fcolor::InvalidInput("side: expected " + std::to_string(codewords * n) + " symbols, got " +
                                   std::to_string(side_symbols.size()));
      for (const auto& s : side_symbols) (void)m.x2_index(s);

      Json encoded = Json::array();
      std::string bits;
      for (std::size_t k = 0; k < codewords; ++k) {
        std::vector<std::vector<std::string>> group;
        for (int j = 0; j < b; ++j) group.push_back(split(blocks[k * static_cast<std::size_t>(b) + static_cast<std::size_t>(j)], ','));
        auto enc = fcolor::encode(m, n, c, book, group);
        bits += enc.bits;
        encoded.push_back({{"replicas", group}, {"replica_colors", enc.replica_colors}, {"label", enc.label}, {"bits", enc.bits}});
      }
      doc["encoded"] = std::move(encoded);
      doc["bits"] = bits;
      auto packed = fcolor::pack_bits(bits);
      doc["packed_hex"] = to_hex(packed);
      auto decoded = fcolor::decode(m, n, c, book, fcolor::unpack_bits(packed), side_symbols);
      doc["side"] = side_symbols;
      doc["decoded"] = fcolor::to_json(decoded);
    }
    if (verify) doc["verify"] = fcolor::to_json(fcolor::verify_zero_error(m, n, c, book, opts.budget));
    emit(std::move(doc), out_json);
  });
}

fcolor_status fcolor_pack_bits(const char* bits, unsigned char** out_bytes, size_t* out_len) {
  return guarded([&] {
    require(bits && out_bytes && out_len, "fcolor_pack_bits: null argument");
    auto packed = fcolor::pack_bits(bits);
    auto* buffer = static_cast<unsigned char*>(std::malloc(packed.size()));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, packed.data(), packed.size());
    *out_bytes = buffer;
    *out_len = packed.size();
  });
}

fcolor_status fcolor_unpack_bits(const unsigned char* bytes, size_t len, char** out_bits) {
  return guarded([&] {
    require((bytes || len == 0) && out_bits, "fcolor_unpack_bits: null argument");
    std::vector<std::uint8_t> data(bytes, bytes + len);
    *out_bits = copy_string(fcolor::unpack_bits(data));
  });
}

}  // extern "C"
