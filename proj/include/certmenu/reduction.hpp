#pragma once

#include "certmenu/config.hpp"
#include "certmenu/economy.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

// Assortative partner of producer psi: the consumer at the same quantile,
// phi(psi) = F^{-1}(G(psi)).
double matched_consumer(const CertificationEconomy& econ, double psi);

// Collapses the two-sided economy into a single-buyer pricing problem:
// v(q; psi) = f(q; phi(psi)) - g(q; psi), buyer types distributed as G,
// same verification cost.  The constructed valuation is validated; a
// failure raises ValidationError.
PricingInstance reduce_to_pricing(const CertificationEconomy& econ,
                                  const Config& cfg = default_config());

}  // namespace certmenu
