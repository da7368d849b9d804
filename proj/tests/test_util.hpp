#pragma once

#include <random>
#include <vector>

#include "certmenu/instance.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu::testing {

inline PricingInstance zoo_pricing(const std::string& name, double H = 0.0) {
  std::map<std::string, double> params;
  if (H > 0.0) params["H"] = H;
  return make_named_instance(name, params).build_pricing();
}

// Random menu with prices in [0, price_hi]; qualities uniform in the
// instance's quality domain.
inline Menu random_menu(std::mt19937_64& rng, const PricingInstance& inst,
                        int max_items, double price_hi) {
  std::uniform_int_distribution<int> n_items(1, max_items);
  std::uniform_real_distribution<double> uq(0.0, inst.q_max());
  std::uniform_real_distribution<double> up(0.0, price_hi);
  std::vector<MenuItem> raw;
  int n = n_items(rng);
  for (int i = 0; i < n; ++i) raw.push_back({uq(rng), up(rng)});
  return normalize_menu(std::move(raw), inst.q_max());
}

}  // namespace certmenu::testing
