#pragma once

#include <optional>
#include <vector>

#include "certmenu/config.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

// One demand segment: buyer types in [theta_from, theta_to) purchase
// menu item item_index; the top segment is closed and owns any atom at
// the top of the support.
struct Segment {
  double theta_from = 0.0;
  double theta_to = 0.0;
  int item_index = 0;
  double mass = 0.0;
};

// Demand segmentation of the type space plus the induced objectives.
// welfare = revenue + buyer_surplus holds by construction.
struct MarketOutcome {
  std::vector<Segment> segments;
  double revenue = 0.0;
  double welfare = 0.0;
  double buyer_surplus = 0.0;
};

// Buyer utility for a single item.
inline double item_utility(const PricingInstance& inst, const MenuItem& it,
                           double theta) {
  if (it.quality == 0.0) return -it.price;  // v(0) = 0 by normalization
  return inst.value(it.quality, theta) - it.price;
}

// argmax over menu items of v(q_i; theta) - p_i, ties toward the higher
// quality.  The trivial item keeps the result's utility >= 0.
int best_response(const PricingInstance& inst, const Menu& menu, double theta);

// The lowest type indifferent between two items (item_a.quality <
// item_b.quality): the infimum theta with
//   [v(q_b;theta) - p_b] - [v(q_a;theta) - p_a] >= 0,
// which is unique up to plateaus because the difference is non-decreasing
// in theta.  Returns nullopt when no type in the support (weakly) prefers
// the larger item, or when every type strictly prefers it.
std::optional<double> indifference_type(const PricingInstance& inst,
                                        const MenuItem& item_a,
                                        const MenuItem& item_b,
                                        const Config& cfg = default_config());

// Infimum type willing to buy the item on its own: v(q; theta) >= p.
std::optional<double> lowest_buyer(const PricingInstance& inst,
                                   const MenuItem& item,
                                   const Config& cfg = default_config());

// Cutoff segmentation of the type space for a normalized menu, with exact
// revenue / welfare / buyer surplus.  Verifies the segment map against
// best_response at cfg.probe_count random types; disagreement beyond
// tolerance raises InternalError.
MarketOutcome segment_outcome(const PricingInstance& inst, const Menu& menu,
                              const Config& cfg = default_config());

// Monotone bisection utilities shared by the solvers.  f must be
// non-decreasing; returns the infimum x in [lo, hi] with f(x) >= 0 given
// f(hi) >= 0 > f(lo).
template <typename F>
double bisect_lowest(const F& f, double lo, double hi, const Config& cfg) {
  int it = 0;
  while (hi - lo > cfg.tol_root) {
    if (++it > cfg.bisect_cap)
      throw NumericError("bisection iteration cap reached", 0.5 * (lo + hi));
    double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace certmenu
