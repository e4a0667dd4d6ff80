#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fcolor {

/// Size limits for the exponential parts of the pipeline. Operations refuse
/// (BudgetExceeded) or fall back to flagged bounds instead of running away.
struct Budget {
  std::size_t power_vertices = 20000;      // |V|^n for and_power
  std::size_t all_sets_vertices = 64;      // enumerate every independent set
  std::size_t maximal_sets_vertices = 200; // Bron-Kerbosch maximal sets
  std::size_t independent_sets = 2000000;  // sets returned by one enumeration
  std::size_t ilp_columns = 100000;
  std::uint64_t ilp_nodes = 2000000;
  std::size_t entropy_vertices = 25;       // exact min-entropy search
  std::uint64_t entropy_nodes = 50000000;
  std::size_t codec_cases = 5000000;       // exhaustive codec enumeration

  /// Defaults, overridden by FCOLOR_BUDGET if set.
  static Budget from_environment();

  /// Applies "key=value,key=value" overrides; unknown keys throw InvalidInput.
  void apply_overrides(std::string_view overrides);
};

}  // namespace fcolor
