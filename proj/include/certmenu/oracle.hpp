#pragma once

#include <utility>
#include <vector>

#include "certmenu/config.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

// A fully discretized pricing problem: type atoms with masses, candidate
// quality and price grids, and the exact value table at the sample
// points.  Ground truth for the dynamic programs on small instances.
struct DiscreteInstance {
  std::vector<double> types;     // ascending
  std::vector<double> masses;    // same length, sums to 1
  std::vector<double> qualities; // ascending, strictly positive
  std::vector<double> prices;    // ascending
  std::vector<double> v_table;   // [quality_index * n_types + type_index]
  std::vector<double> suffix_mass;  // suffix_mass[j] = sum of masses[j..]
  double c = 0.0;

  int n_types() const { return int(types.size()); }
  int n_qualities() const { return int(qualities.size()); }
  int n_prices() const { return int(prices.size()); }
  double v(int qi, int tj) const { return v_table[std::size_t(qi) * types.size() + tj]; }

  // Attaches candidate grids and precomputes the value table.
  DiscreteInstance with_grids(const PricingInstance& inst,
                              std::vector<double> qualities,
                              std::vector<double> prices) const;
};

// n quantile-stratified type atoms of mass 1/n each, theta_j at quantile
// (j - 0.5)/n.  Grids are attached separately by the caller.
DiscreteInstance discretize_types(const PricingInstance& inst, int n);

// Per-atom best response over an explicit item list (ascending quality,
// trivial item implicit), same tie rule as best_response: ties go to the
// higher quality.  Items are (quality_index, price) pairs.
struct DiscreteItem {
  int quality_index;
  double price;
};
int discrete_choice(const DiscreteInstance& di,
                    const std::vector<DiscreteItem>& items, int type_index);

double evaluate_discrete(const DiscreteInstance& di,
                         const std::vector<DiscreteItem>& items,
                         bool welfare_objective);

enum class Objective { kRevenue, kWelfare };

struct OracleResult {
  Menu menu;
  std::vector<DiscreteItem> items;
  double value = 0.0;
  std::size_t candidates = 0;
};

// Exhaustive search over all menus of at most k items drawn from the
// instance grids, evaluated by exact discrete expectation.  Deterministic;
// value ties keep the lexicographically smaller menu.  Raises
// ResourceError when the enumeration would exceed cfg.oracle_budget.
OracleResult brute_force_optimal(const DiscreteInstance& di, int k,
                                 Objective objective,
                                 const Config& cfg = default_config());

}  // namespace certmenu
