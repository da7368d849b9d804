#pragma once

#include <utility>
#include <vector>

#include "certmenu/choice.hpp"
#include "certmenu/config.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

struct DenseWelfareResult {
  Menu menu;
  double welfare = 0.0;
};

// The welfare-optimal structure: every grid quality offered at cost c
// (plus the free trivial item).  As n_grid grows this converges to the
// first-best welfare E[max(0, max_q v(q;theta) - c)].
DenseWelfareResult welfare_optimal_dense(const PricingInstance& inst,
                                         int n_grid,
                                         const Config& cfg = default_config());

// First-best benchmark: per-type gains from trade maximized over quality
// (golden-section on the concave value), net of the verification cost.
double first_best_welfare(const PricingInstance& inst,
                          const Config& cfg = default_config());

// Welfare-maximizing menu of at most k at-cost items on the quality grid
// of multiples of eps.  The DP indexes quality only (all prices are c).
struct WelfareDpResult {
  Menu menu;
  double welfare_dp_value = 0.0;   // table value at the best cell
  double welfare_exact = 0.0;      // segment_outcome of the menu
  std::vector<double> qualities;   // the quality grid
  std::vector<double> M;           // [layer][Q]
  std::vector<double> L;
  int k = 0;
};
WelfareDpResult welfare_dp(const PricingInstance& inst, double eps, int k,
                           const Config& cfg = default_config());

// Wel(M) - Rev(M): the surplus kept by the market side (consumers plus
// producers in the economy view).  Monotone under menu inclusion.
double wel_minus_rev(const PricingInstance& inst, const Menu& menu,
                     const Config& cfg = default_config());

}  // namespace certmenu
