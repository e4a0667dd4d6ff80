// fcolor command-line tool. Talks to the library through the C API only.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fcolor/fcolor.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;

struct Failure {
  fcolor_status status;
  std::string message;
};

void check(fcolor_status s) {
  if (s != FCOLOR_OK) throw Failure{s, fcolor_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  fcolor_string_free(s);
  return out;
}

using ModelPtr = std::unique_ptr<fcolor_model, decltype(&fcolor_model_free)>;
using ConfigPtr = std::unique_ptr<fcolor_config, decltype(&fcolor_config_free)>;

ModelPtr load_model(const std::string& path) {
  fcolor_model* m = nullptr;
  check(fcolor_model_load_file(path.c_str(), &m));
  return ModelPtr(m, fcolor_model_free);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{FCOLOR_ERR_INVALID_INPUT, "cannot open \"" + path + "\""};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Failure{FCOLOR_ERR_INVALID_INPUT, "cannot write \"" + path + "\""};
  out << text;
}

// Aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& os) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      os << "  " << line << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string fixed(const Json& v, int digits = 4) {
  if (v.is_null()) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v.get<double>();
  return os.str();
}

std::string text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

// Zero-length codewords occur when a single color set carries all the mass.
std::string bits_text(const Json& v) {
  std::string s = text(v);
  return s.empty() ? "(empty)" : s;
}

std::string set_text(const Json& colors) {
  std::string s = "{";
  for (std::size_t i = 0; i < colors.size(); ++i) s += (i ? "," : "") + colors[i].dump();
  return s + "}";
}

void print_coloring(const Json& coloring, std::ostream& os) {
  Table t({"vertex", "colors"});
  for (const auto& [label, colors] : coloring["assignment"].items()) t.add({label, set_text(colors)});
  t.print(os);
}

void print_distribution(const Json& dist, std::ostream& os) {
  Table t({"color set", "prob", "value"});
  for (const auto& o : dist["outcomes"]) t.add({text(o["label"]), text(o["prob"]), fixed(o["value"])});
  t.print(os);
  os << "  entropy " << fixed(dist["entropy_bits"]) << " bits\n";
}

void render_build(const Json& d, std::ostream& os) {
  os << d["vertex_count"].get<std::size_t>() << " vertices, " << d["edge_count"].get<std::size_t>() << " edges (n = "
     << d["n"] << ")\n";
  os << "independent sets: " << text(d["independent_sets"]["all"]) << " nonempty, "
     << text(d["independent_sets"]["maximal"]) << " maximal\n";
  if (d.contains("edge_witnesses")) {
    os << "edges:\n";
    Table t({"u", "v", "witness x2"});
    for (const auto& e : d["edge_witnesses"]) t.add({text(e["u"]), text(e["v"]), text(e["x2"])});
    t.print(os);
  }
}

void render_color(const Json& d, std::ostream& os) {
  if (d["mode"] == "chromatic") {
    const auto& f = d["fractional"];
    os << "n = " << d["n"] << ", b = " << d["b"] << ": chi_b = " << d["chi_b"] << "\n";
    os << "chi_f = " << text(f["chi_f"]["exact"]) << " (" << fixed(f["chi_f"]["value"]) << "), b* = " << text(f["b_star"])
       << " (searched b <= " << f["b_search_bound"] << ")\n";
    Table chi({"b", "chi_b", "chi_b/b"});
    for (const auto& row : f["chi_b"])
      chi.add({row["b"].dump(), row["chi_b"].dump(), fixed(row["chi_b"].get<double>() / row["b"].get<double>())});
    chi.print(os);
  } else {
    os << "n = " << d["n"] << ", b = " << d["b"] << ", a = " << d["a"] << ": minimum entropy " << fixed(d["entropy_bits"])
       << " bits, " << fixed(d["entropy_per_symbol_replica"]) << " per symbol and replica"
       << (d["optimal"].get<bool>() ? " (optimal)" : " (best found, lower bound " + fixed(d["lower_bound_bits"]) + ")")
       << "\n";
    os << "conditional entropy H(C|X2^n) " << fixed(d["conditional_entropy_bits"]) << " bits\n";
  }
  os << "coloring:\n";
  print_coloring(d["coloring"], os);
  os << "color-set distribution:\n";
  print_distribution(d["distribution"], os);
}

void render_rate_rows(const Json& fractional, std::ostream& os) {
  Table t({"b", "a", "colors", "H(C) bits", "rate", "H(C|X2)/(nb)", "optimal"});
  for (const auto& r : fractional["per_b"])
    t.add({r["b"].dump(), r["a"].dump(), r["colors_used"].dump(), fixed(r["entropy_bits"]), fixed(r["rate"]),
           fixed(r["conditional_rate"]), r["optimal"].get<bool>() ? "yes" : "no"});
  t.print(os);
  for (const auto& f : fractional["failures"]) os << "  skipped " << text(f) << "\n";
}

void render_rates(const Json& d, std::ostream& os) {
  os << "n = " << d["n"] << ", b <= " << d["b_max"] << "\n";
  if (d["gap"].is_null()) {
    render_rate_rows(d["fractional"], os);
    os << "traditional rate " << fixed(d["traditional"]["rate"]) << "\n";
    os << "fractional rate  " << fixed(d["fractional"]["rate"]) << " (b = " << d["fractional"]["best_b"] << ")\n";
    os << "integrality gap  undefined: " << text(d["gap_error"]) << "\n";
    return;
  }
  const auto& g = d["gap"];
  render_rate_rows(g["fractional"], os);
  os << "traditional rate " << fixed(g["traditional"]["rate"]) << "\n";
  os << "fractional rate  " << fixed(g["fractional"]["rate"]) << " (b = " << g["fractional"]["best_b"] << ")\n";
  if (g["exact"].get<bool>())
    os << "integrality gap  " << fixed(g["ig"]) << "\n";
  else
    os << "integrality gap  in [" << fixed(g["ig_lower"]) << ", " << fixed(g["ig_upper"]) << "] (bounds, not optimal)\n";
  os << "chi_f(G) = " << text(g["chi_f_base"]["exact"]) << ", b*(G^n) = " << text(g["b_star_n"]);
  if (!g["conjecture_lower_bound"].is_null()) os << ", conjectured bound " << fixed(g["conjecture_lower_bound"]);
  os << "\n";
}

void render_monotonicity(const Json& d, std::ostream& os) {
  Table t({"n", "traditional", "fractional", "IG", "exact"});
  for (const auto& row : d["table"]["rows"]) {
    if (row.contains("gap")) {
      const auto& g = row["gap"];
      std::string ig = g["exact"].get<bool>() ? fixed(g["ig"]) : "[" + fixed(g["ig_lower"]) + ", " + fixed(g["ig_upper"]) + "]";
      t.add({row["n"].dump(), fixed(g["traditional"]["rate"]), fixed(g["fractional"]["rate"]), ig,
             g["exact"].get<bool>() ? "yes" : "no"});
    } else {
      t.add({row["n"].dump(), "-", "-", "undefined", text(row["error"])});
    }
  }
  t.print(os);
  const auto& inv = d["table"]["inversions"];
  if (inv.empty()) os << "IG_n is non-decreasing over the computed rows\n";
  else os << "inversions at n = " << inv.dump() << "\n";
}

void render_codec(const Json& d, std::ostream& os) {
  os << "n = " << d["n"] << ", b = " << d["b"] << "\n";
  os << "codebook:\n";
  Table t({"color set", "codeword", "prob"});
  for (const auto& e : d["codebook"]["entries"]) t.add({text(e["label"]), bits_text(e["bits"]), text(e["prob"])});
  t.print(os);
  os << "average length " << text(d["codebook"]["average_length"]["exact"]) << " = "
     << fixed(d["codebook"]["average_length"]["value"]) << " bits, Kraft sum "
     << text(d["codebook"]["kraft_sum"]["exact"]) << "\n";
  os << "model rate " << text(d["model_bits_per_outcome"]["exact"]) << " = " << fixed(d["model_bits_per_outcome"]["value"])
     << " bits per outcome\n";
  if (d.contains("encoded")) {
    os << "encoder:\n";
    Table e({"replicas", "colors", "set", "bits"});
    for (const auto& blk : d["encoded"]) {
      std::string reps;
      for (const auto& r : blk["replicas"]) {
        std::string s;
        for (const auto& x : r) s += (s.empty() ? "" : ",") + text(x);
        reps += (reps.empty() ? "(" : " (") + s + ")";
      }
      e.add({reps, set_text(blk["replica_colors"]), text(blk["label"]), bits_text(blk["bits"])});
    }
    e.print(os);
    os << "bitstream " << bits_text(d["bits"]) << " (packed " << text(d["packed_hex"]) << ")\n";
    os << "decoder, side information " << text(d["side"].dump()) << ":\n";
    Table r({"set", "color", "outcomes", "resolved"});
    for (const auto& blk : d["decoded"]["blocks"])
      for (std::size_t i = 0; i < blk["colors"].size(); ++i) {
        std::string outs;
        for (const auto& x : blk["outcomes"][i]) outs += (outs.empty() ? "" : ",") + text(x);
        r.add({text(blk["label"]), blk["colors"][i].dump(), "(" + outs + ")", text(blk["resolved"][i])});
      }
    r.print(os);
    std::string flat;
    for (const auto& x : d["decoded"]["outcomes"]) flat += (flat.empty() ? "" : " ") + text(x);
    os << "outcomes: " << flat << "\n";
  }
  if (d.contains("verify")) {
    const auto& v = d["verify"];
    os << "zero-error check: " << (v["ok"].get<bool>() ? "passed" : "FAILED") << ", " << v["cases"] << " cases, "
       << v["mismatches"] << " mismatches, " << fixed(v["empirical_bits_per_outcome"]) << " bits per outcome (uniform over cases), "
       << fixed(v["model_bits_per_outcome"]["value"]) << " under the model\n";
    if (!v["counterexample"].is_null()) os << "counterexample: " << text(v["counterexample"]) << "\n";
  }
}

struct Common {
  std::string instance;
  unsigned n = 1;
  bool json = false;
  bool no_meta = false;
  unsigned threads = 1;
  std::string budget;
};

ConfigPtr make_config(const Common& c) {
  fcolor_config* cfg = nullptr;
  check(fcolor_config_new(&cfg));
  ConfigPtr out(cfg, fcolor_config_free);
  check(fcolor_config_set_threads(cfg, c.threads));
  if (!c.budget.empty()) check(fcolor_config_set_budget(cfg, c.budget.c_str()));
  return out;
}

void output(const Common& c, Json doc, void (*render)(const Json&, std::ostream&), double elapsed_ms) {
  if (c.json) {
    if (!c.no_meta) doc["meta"] = {{"version", fcolor_version()}, {"elapsed_ms", elapsed_ms}};
    std::cout << doc.dump(2) << "\n";
  } else {
    render(doc, std::cout);
    if (!c.no_meta) std::cout << "# fcolor " << fcolor_version() << ", " << std::fixed << std::setprecision(1) << elapsed_ms << " ms\n";
  }
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("instance", c.instance, "Instance JSON file")->required();
  cmd->add_option("--n", c.n, "Block length")->check(CLI::Range(1U, 64U));
  cmd->add_flag("--json", c.json, "Print the results document instead of tables");
  cmd->add_flag("--no-meta", c.no_meta, "Omit version and timing information");
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1U, 256U));
  cmd->add_option("--budget", c.budget, "Budget overrides key=value,... (after FCOLOR_BUDGET)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic-graph functional compression: colorings, rates and codes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fcolor_version()));

  Common common;

  auto* build = app.add_subcommand("build", "Build the characteristic graph of length-n blocks");
  add_common(build, common);
  std::string dot_path;
  build->add_option("--dot", dot_path, "Write the graph in DOT format");

  auto* color = app.add_subcommand("color", "Color the characteristic graph");
  add_common(color, common);
  int b = 1;
  int a = 0;
  bool chromatic = false, min_entropy = false;
  std::string lp_path;
  color->add_option("--b", b, "Colors per vertex")->check(CLI::Range(1, 64));
  color->add_option("--a", a, "Palette size for --min-entropy (default: chi_b, or |V| when b = 1)")->check(CLI::Range(1, 4096));
  auto* chromatic_flag = color->add_flag("--chromatic", chromatic, "Least a admitting an a:b coloring, with chi_f");
  auto* entropy_flag = color->add_flag("--min-entropy", min_entropy, "Minimum-entropy a:b coloring");
  chromatic_flag->excludes(entropy_flag);
  color->add_option("--dot", dot_path, "Write the colored graph in DOT format");
  color->add_option("--dump-lp", lp_path, "Write the covering program and its LP/ILP solutions as JSON");

  auto* rates = app.add_subcommand("rates", "Traditional and fractional rates and the integrality gap");
  add_common(rates, common);
  int b_max = 2;
  unsigned n_max = 0;
  int b_star_bound = 8;
  rates->add_option("--b-max", b_max, "Largest b in the fractional scan")->check(CLI::Range(1, 64));
  rates->add_option("--n-max", n_max, "Tabulate the gap for n = 1..n-max")->check(CLI::Range(1U, 64U));
  rates->add_option("--b-star-bound", b_star_bound, "Search bound for b*")->check(CLI::Range(1, 64));

  auto* codec = app.add_subcommand("codec", "Encode and decode with side information");
  add_common(codec, common);
  std::string side, replicas, coloring_path, binary_path;
  bool verify = false;
  codec->add_option("--b", b, "Replicas per codeword")->check(CLI::Range(1, 64));
  codec->add_option("--side", side, "Side-information symbols, comma separated (n per codeword)");
  codec->add_option("--replicas", replicas, "Source blocks: ';'-separated, n comma-separated symbols each, b per codeword");
  codec->add_option("--coloring", coloring_path, "Coloring document (default: a minimum-entropy coloring)");
  codec->add_flag("--verify", verify, "Exhaustive zero-error check");
  codec->add_option("--binary", binary_path, "Write the packed bitstream to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count(); };

  try {
    auto model = load_model(common.instance);
    auto cfg = make_config(common);

    if (build->parsed()) {
      char* out = nullptr;
      check(fcolor_build(model.get(), cfg.get(), common.n, &out));
      Json doc = Json::parse(take(out));
      if (!dot_path.empty()) {
        char* dot = nullptr;
        check(fcolor_build_dot(model.get(), cfg.get(), common.n, nullptr, &dot));
        write_file(dot_path, take(dot));
      }
      output(common, std::move(doc), render_build, elapsed());
      return kExitOk;
    }

    if (color->parsed()) {
      if (!chromatic && !min_entropy) throw CLI::RequiredError("--chromatic or --min-entropy");
      if (chromatic && a != 0) throw CLI::ValidationError("--a", "applies to --min-entropy only");
      char* out = nullptr;
      check(fcolor_color(model.get(), cfg.get(), common.n, b, chromatic ? FCOLOR_CHROMATIC : FCOLOR_MIN_ENTROPY, a, &out));
      std::string text_doc = take(out);
      Json doc = Json::parse(text_doc);
      if (!dot_path.empty()) {
        char* dot = nullptr;
        check(fcolor_build_dot(model.get(), cfg.get(), common.n, text_doc.c_str(), &dot));
        write_file(dot_path, take(dot));
      }
      if (!lp_path.empty()) {
        char* lp = nullptr;
        check(fcolor_dump_lp(model.get(), cfg.get(), common.n, b, &lp));
        write_file(lp_path, take(lp));
      }
      output(common, std::move(doc), render_color, elapsed());
      return kExitOk;
    }

    if (rates->parsed()) {
      check(fcolor_config_set_b_star_bound(cfg.get(), b_star_bound));
      char* out = nullptr;
      if (n_max > 0) {
        check(fcolor_monotonicity(model.get(), cfg.get(), n_max, b_max, &out));
        Json doc = Json::parse(take(out));
        const bool inverted = !doc["table"]["inversions"].empty();
        output(common, std::move(doc), render_monotonicity, elapsed());
        return inverted ? kExitViolation : kExitOk;
      }
      check(fcolor_rates(model.get(), cfg.get(), common.n, b_max, &out));
      Json doc = Json::parse(take(out));
      bool violation = false;
      if (!doc["gap"].is_null() && doc["gap"]["exact"].get<bool>() && doc["gap"]["ig"].get<double>() < 1.0 - 1e-12) violation = true;
      output(common, std::move(doc), render_rates, elapsed());
      return violation ? kExitViolation : kExitOk;
    }

    if (codec->parsed()) {
      std::string coloring_doc;
      if (!coloring_path.empty()) coloring_doc = read_file(coloring_path);
      char* out = nullptr;
      check(fcolor_codec(model.get(), cfg.get(), common.n, b, coloring_path.empty() ? nullptr : coloring_doc.c_str(),
                         side.c_str(), replicas.c_str(), verify ? 1 : 0, &out));
      Json doc = Json::parse(take(out));
      if (!binary_path.empty()) {
        if (!doc.contains("bits")) throw CLI::ValidationError("--binary", "needs --replicas to produce a bitstream");
        unsigned char* bytes = nullptr;
        std::size_t len = 0;
        check(fcolor_pack_bits(doc["bits"].get<std::string>().c_str(), &bytes, &len));
        std::string raw(reinterpret_cast<char*>(bytes), len);
        fcolor_bytes_free(bytes);
        write_file(binary_path, raw, true);
      }
      const bool failed = doc.contains("verify") && !doc["verify"]["ok"].get<bool>();
      output(common, std::move(doc), render_codec, elapsed());
      return failed ? kExitViolation : kExitOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "fcolor: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Failure& f) {
    std::cerr << "fcolor: " << fcolor_status_name(f.status) << ": " << f.message << "\n";
    return f.status == FCOLOR_ERR_INVALID_ARGUMENT ? kExitUsage : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "fcolor: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
