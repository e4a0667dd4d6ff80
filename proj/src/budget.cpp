#include "fcolor/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "fcolor/error.hpp"

namespace fcolor {

Budget Budget::from_environment() {
  Budget b;
  if (const char* env = std::getenv("FCOLOR_BUDGET"); env != nullptr && *env != '\0')
    b.apply_overrides(env);
  return b;
}

void Budget::apply_overrides(std::string_view overrides) {
  while (!overrides.empty()) {
    auto comma = overrides.find(',');
    std::string_view item = overrides.substr(0, comma);
    overrides = comma == std::string_view::npos ? std::string_view{} : overrides.substr(comma + 1);
    if (item.empty()) continue;

    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw InvalidInput("budget override \"" + std::string(item) + "\" is not key=value");
    std::string_view key = item.substr(0, eq);
    std::string_view text = item.substr(eq + 1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw InvalidInput("budget override \"" + std::string(item) + "\" needs an unsigned integer");

    if (key == "power") power_vertices = value;
    else if (key == "all_sets") all_sets_vertices = value;
    else if (key == "maximal_sets") maximal_sets_vertices = value;
    else if (key == "sets") independent_sets = value;
    else if (key == "ilp_columns") ilp_columns = value;
    else if (key == "ilp_nodes") ilp_nodes = value;
    else if (key == "entropy_vertices") entropy_vertices = value;
    else if (key == "entropy_nodes") entropy_nodes = value;
    else if (key == "codec_cases") codec_cases = value;
    else throw InvalidInput("unknown budget key \"" + std::string(key) + "\"");
  }
}

}  // namespace fcolor
