#include <doctest.h>

#include <json.hpp>

#include <string>

#include "fcolor/fcolor.h"
#include "support.hpp"

namespace {

using Json = nlohmann::json;

struct Model {
  fcolor_model* handle = nullptr;
  Model() { REQUIRE(fcolor_model_load_file((testing::data_dir() + "/example1.json").c_str(), &handle) == FCOLOR_OK); }
  ~Model() { fcolor_model_free(handle); }
};

Json take(char* text) {
  Json j = Json::parse(text);
  fcolor_string_free(text);
  return j;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(fcolor_status_name(FCOLOR_OK)) == "ok");
  CHECK(std::string(fcolor_version()) == "0.1.0");
  fcolor_model* m = nullptr;
  CHECK(fcolor_model_load_file("/nonexistent.json", &m) == FCOLOR_ERR_INVALID_INPUT);
  CHECK(m == nullptr);
  CHECK(std::string(fcolor_last_error()).find("nonexistent") != std::string::npos);
  CHECK(fcolor_model_load_json("{", &m) == FCOLOR_ERR_INVALID_INPUT);
  CHECK(fcolor_model_load_json(nullptr, &m) == FCOLOR_ERR_INVALID_ARGUMENT);
  fcolor_model_free(nullptr);
  fcolor_config_free(nullptr);
}

TEST_CASE("build and color") {
  Model model;
  char* out = nullptr;
  REQUIRE(fcolor_build(model.handle, nullptr, 1, &out) == FCOLOR_OK);
  auto j = take(out);
  CHECK(j["schema"] == "fcolor/1");
  CHECK(j["graph"]["vertices"].size() == 5);

  REQUIRE(fcolor_color(model.handle, nullptr, 1, 1, FCOLOR_CHROMATIC, 0, &out) == FCOLOR_OK);
  CHECK(take(out)["chi_b"] == 3);
  REQUIRE(fcolor_color(model.handle, nullptr, 2, 2, FCOLOR_CHROMATIC, 0, &out) == FCOLOR_OK);
  CHECK(take(out)["chi_b"] == 13);
  REQUIRE(fcolor_color(model.handle, nullptr, 1, 2, FCOLOR_MIN_ENTROPY, 0, &out) == FCOLOR_OK);
  auto me = take(out);
  CHECK(me["a"] == 5);
  CHECK(me["optimal"] == true);
  CHECK(fcolor_color(model.handle, nullptr, 1, 0, FCOLOR_CHROMATIC, 0, &out) == FCOLOR_ERR_INVALID_ARGUMENT);
  CHECK(fcolor_color(model.handle, nullptr, 1, 1, FCOLOR_MIN_ENTROPY, 2, &out) == FCOLOR_ERR_INFEASIBLE);

  REQUIRE(fcolor_build_dot(model.handle, nullptr, 1, nullptr, &out) == FCOLOR_OK);
  CHECK(std::string(out).rfind("graph G {", 0) == 0);
  fcolor_string_free(out);
}

TEST_CASE("configuration and budgets") {
  Model model;
  fcolor_config* config = nullptr;
  REQUIRE(fcolor_config_new(&config) == FCOLOR_OK);
  CHECK(fcolor_config_set_budget(config, "nope=1") == FCOLOR_ERR_INVALID_INPUT);
  REQUIRE(fcolor_config_set_budget(config, "power=10") == FCOLOR_OK);
  char* out = nullptr;
  REQUIRE(fcolor_config_to_json(config, &out) == FCOLOR_OK);
  CHECK(take(out)["budget"]["power"] == 10);
  CHECK(fcolor_build(model.handle, config, 2, &out) == FCOLOR_ERR_BUDGET);
  CHECK(fcolor_config_set_threads(config, 0) == FCOLOR_ERR_INVALID_ARGUMENT);
  fcolor_config_free(config);
}

TEST_CASE("rates, bound and codec") {
  Model model;
  char* out = nullptr;
  REQUIRE(fcolor_rates(model.handle, nullptr, 1, 2, &out) == FCOLOR_OK);
  auto r = take(out);
  CHECK(r["gap"]["ig"].get<double>() == doctest::Approx(1.311).epsilon(0.002));

  double bound = 0;
  REQUIRE(fcolor_conjecture_bound(1, 2, "5/2", &bound) == FCOLOR_OK);
  CHECK(bound == doctest::Approx(1.1387).epsilon(1e-3));
  CHECK(fcolor_conjecture_bound(1, 2, "1", &bound) == FCOLOR_ERR_INVALID_INPUT);

  REQUIRE(fcolor_codec(model.handle, nullptr, 2, 1, nullptr, "-1,1", "-2,2", 1, &out) == FCOLOR_OK);
  auto c = take(out);
  CHECK(c["verify"]["ok"] == true);
  CHECK(c["decoded"]["outcomes"] == Json::array({"-3", "3"}));
  CHECK(fcolor_codec(model.handle, nullptr, 2, 1, nullptr, "-1,9", "-2,2", 0, &out) == FCOLOR_ERR_INVALID_INPUT);
  CHECK(fcolor_codec(model.handle, nullptr, 2, 1, nullptr, "-1", "-2,2", 0, &out) == FCOLOR_ERR_INVALID_INPUT);

  unsigned char* bytes = nullptr;
  size_t len = 0;
  REQUIRE(fcolor_pack_bits("101", &bytes, &len) == FCOLOR_OK);
  CHECK(len == 9);
  REQUIRE(fcolor_unpack_bits(bytes, len, &out) == FCOLOR_OK);
  CHECK(std::string(out) == "101");
  fcolor_string_free(out);
  CHECK(fcolor_unpack_bits(bytes, 4, &out) == FCOLOR_ERR_DECODE);
  fcolor_bytes_free(bytes);
}
