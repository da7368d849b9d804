#pragma once

#include <cmath>
#include <vector>

#include "certmenu/errors.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

// Discretization grids for the revenue dynamic program: qualities on the
// geometric grid eps*(1+eps)^l up to q_max (quality 0 is the implicit
// trivial item), prices as multiples of the price step from -3k steps up
// to one step above the top willingness-to-pay.
struct Grids {
  double epsilon = 0.0;
  double price_step = 0.0;
  std::vector<double> qualities;  // ascending, first entry = eps
  std::vector<double> prices;     // ascending, uniform spacing price_step
  int zero_price_index = 0;       // prices[zero_price_index] == 0

  int n_q() const { return int(qualities.size()); }
  int n_p() const { return int(prices.size()); }
  double price(int idx) const { return (idx - zero_price_index) * price_step; }
};

// Builds the grids for an instance.  p_max is the largest value v(q,
// theta_hi) over grid qualities (no rational price exceeds it), plus one
// step of headroom.
inline Grids make_revenue_grids(const PricingInstance& inst, double eps, int k,
                                double price_step) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must be in (0, 1)");
  if (!(price_step > 0.0)) throw DomainError("price step must be positive");
  Grids g;
  g.epsilon = eps;
  g.price_step = price_step;
  double q = eps;
  while (q <= inst.q_max() * (1.0 + 1e-12)) {
    g.qualities.push_back(q);
    q *= (1.0 + eps);
  }
  const double theta_hi = inst.dist.support_hi();
  double p_max = 0.0;
  for (double qq : g.qualities)
    p_max = std::max(p_max, inst.value(qq, theta_hi));
  p_max = std::max(p_max, price_step);

  const int lo_steps = 3 * std::max(k, 1);
  const int hi_steps = int(std::ceil(p_max / price_step)) + 1;
  g.zero_price_index = lo_steps;
  g.prices.resize(std::size_t(lo_steps + hi_steps + 1));
  for (int i = 0; i < int(g.prices.size()); ++i)
    g.prices[std::size_t(i)] = (i - lo_steps) * price_step;
  return g;
}

}  // namespace certmenu
