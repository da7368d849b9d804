#pragma once

#include <cstddef>
#include <cstdint>

namespace certmenu {

// Numeric tolerances and resource caps shared across the solvers.
// Defaults: 1e-9 for comparisons, 1e-8 for quadrature targets, 1e-10 for
// root finding.  All overridable per call.
struct Config {
  double tol_compare = 1e-9;
  double tol_quad = 1e-8;
  double tol_root = 1e-10;
  int bisect_cap = 200;
  int quad_max_depth = 48;

  int probe_count = 64;
  std::uint64_t seed = 42;

  // dp_solve resource limits and path selection.
  std::size_t dp_memory_cap_bytes = std::size_t(6) << 30;
  double dp_exhaustive_budget = 5e8;  // candidate evaluations per solve
  enum class DpPath { kAuto, kExhaustive, kEnvelope };
  DpPath dp_path = DpPath::kAuto;
  // Full (Q,P,k) tables are exported only below this cell count.
  std::size_t dp_table_export_cap = 2'000'000;

  std::size_t oracle_budget = 10'000'000;  // candidate menus
  int threads = 1;
};

inline const Config& default_config() {
  static const Config cfg{};
  return cfg;
}

}  // namespace certmenu
