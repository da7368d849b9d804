#pragma once

#include <limits>
#include <string>
#include <vector>

#include "certmenu/config.hpp"
#include "certmenu/grids.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/oracle.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// DP state: M[Q,P,k] is the best revenue of a menu of at most k items
// whose highest-quality item is (Q,P); L[Q,P,k] is the lowest type that
// purchases it (NaN when the cell is unreachable).  Cells are exported
// for every layer when the table fits cfg.dp_table_export_cap, otherwise
// only the final layer is kept (full == false).
struct DpTables {
  Grids grids;
  int k = 0;
  bool full = false;
  std::vector<double> M;  // [layer][Q][P], layer 0 = one-item menus
  std::vector<double> L;

  std::size_t cell(int Q, int P, int layer) const {
    std::size_t per_layer = std::size_t(grids.n_q()) * grids.n_p();
    std::size_t base = full ? per_layer * std::size_t(layer) : 0;
    return base + std::size_t(Q) * grids.n_p() + std::size_t(P);
  }
  double m(int Q, int P, int layer) const { return M[cell(Q, P, layer)]; }
  double l(int Q, int P, int layer) const { return L[cell(Q, P, layer)]; }
};

struct DpDiagnostics {
  std::size_t cells = 0;       // alive cells per layer times layers
  int grid_q = 0;
  int grid_p = 0;
  double wall_ms = 0.0;
  double revenue_dp = 0.0;     // table value at the best cell
  double revenue_exact = 0.0;  // segment_outcome of the returned menu
  std::string path;            // "exhaustive" | "envelope"
  int k_used = 0;
  std::size_t envelope_fallback_pairs = 0;  // non-concave increment tables
};

struct DpResult {
  Menu menu;
  DpTables tables;
  DpDiagnostics diag;
};

// Approximately revenue-optimal menu of at most k items by dynamic
// programming over the discretization grids.  k = 0 means unconstrained:
// k becomes ceil(1/eps) and the price step is squared (eps^2).
DpResult dp_solve(const PricingInstance& inst, double eps, int k,
                  const Config& cfg = default_config());

// The same recursion on an explicitly discretized instance (types and
// grids fixed by the caller); agrees with brute_force_optimal exactly.
struct DiscreteDpResult {
  Menu menu;
  std::vector<DiscreteItem> items;
  double value = 0.0;
};
DiscreteDpResult dp_solve_discrete(const DiscreteInstance& di, int k);

// Fast path for linear valuations v(q;theta) = theta * m(q), m linear:
// a single item at q_max priced to maximize (p - c) * Pr[buy].  On a
// revenue plateau the highest optimal price is returned.  Raises
// PreconditionError when the instance is not linear.
struct SingleItemResult {
  Menu menu;
  double price = 0.0;
  double revenue = 0.0;
};
SingleItemResult linear_single_item(const PricingInstance& inst,
                                    const Config& cfg = default_config());

bool is_linear_family(const PricingInstance& inst, int n_grid = 24,
                      double tol = 1e-9);

}  // namespace certmenu
