#pragma once

#include <string>
#include <vector>

#include "certmenu/config.hpp"
#include "certmenu/economy.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

// One offending grid 4-tuple (theta1 < theta2, q1 < q2) together with the
// two increment values whose order is wrong.
struct ScViolation {
  double theta1, theta2, q1, q2;
  double inc_low_type, inc_high_type;
};

struct PointViolation {
  double q, theta, value;
};

struct ValidationReport {
  std::vector<ScViolation> single_crossing;   // weak form violated beyond tol
  std::vector<ScViolation> strict_warnings;   // weak holds with equality only
  std::vector<PointViolation> concavity;
  std::vector<PointViolation> normalization;  // v(0; theta) != 0
  std::vector<PointViolation> type_monotone;  // v decreasing in theta
  std::vector<PointViolation> slope_bound;    // dv/dq at 0 above lambda

  bool pass() const {
    return single_crossing.empty() && concavity.empty() &&
           normalization.empty() && type_monotone.empty() &&
           slope_bound.empty();
  }
  std::size_t violation_count() const {
    return single_crossing.size() + concavity.size() + normalization.size() +
           type_monotone.size() + slope_bound.size();
  }
};

// Grid check of the valuation family invariants: weak single-crossing,
// concavity in q, v(0)=0, pointwise monotonicity in type, and the slope
// bound at q=0.  Strict single-crossing failures that still satisfy the
// weak form are reported as warnings, not violations.
ValidationReport validate_single_crossing(const ValuationFamily& family,
                                          double theta_lo, double theta_hi,
                                          int n_grid,
                                          const Config& cfg = default_config());

ValidationReport validate_single_crossing(const PricingInstance& inst,
                                          int n_grid,
                                          const Config& cfg = default_config());

// Checks f (concave, f(0)=0, f <= f_bound, consumer single-crossing) and
// g (convex, g(0)=0, producer single-crossing with reversed inequality).
struct EconomyReport {
  ValidationReport consumer;   // for f, as a valuation in (q, phi)
  ValidationReport producer;   // for g; reversed single-crossing
  std::vector<PointViolation> f_bound;
  std::vector<PointViolation> f_monotone;  // f decreasing in q
  std::vector<PointViolation> g_monotone;  // g decreasing in q
  bool pass() const {
    return consumer.pass() && producer.pass() && f_bound.empty() &&
           f_monotone.empty() && g_monotone.empty();
  }
};

EconomyReport validate_economy(const CertificationEconomy& econ, int n_grid,
                               const Config& cfg = default_config());

// Throwing wrappers used as operation preconditions.
void require_valid(const PricingInstance& inst, int n_grid = 50,
                   const Config& cfg = default_config());
void require_valid(const CertificationEconomy& econ, int n_grid = 50,
                   const Config& cfg = default_config());

}  // namespace certmenu
