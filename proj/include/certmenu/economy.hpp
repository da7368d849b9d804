#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "certmenu/distribution.hpp"
#include "certmenu/errors.hpp"

namespace certmenu {

// Two-sided certification economy: consumer value f(q; phi), producer
// cost g(q; psi), type measures F (consumers) and G (producers), and a
// verification cost c per non-trivial certificate.
//
// f is concave non-decreasing with f(0)=0 and bounded by f_bound
// (default 1; values are scaled so this is without loss for bounded
// valuations).  g is convex non-decreasing with g(0)=0.  f satisfies
// consumer single-crossing, g producer single-crossing with the
// reversed inequality.
class CertificationEconomy {
 public:
  enum class FKind { kPhiTimesQ, kQOnly, kCustom };
  enum class GKind { kQuadraticOverPsi, kHingeTwiceQMinusPsi, kZero, kCustom };

  CertificationEconomy(FKind fk, GKind gk, TypeDistribution F,
                       TypeDistribution G, double c, double q_max,
                       double lambda, double f_bound = 1.0)
      : fkind_(fk), gkind_(gk), F_(std::move(F)), G_(std::move(G)), c_(c),
        q_max_(q_max), lambda_(lambda), f_bound_(f_bound) {
    if (!(c >= 0.0)) throw DomainError("verification cost must be >= 0");
    if (!(q_max > 0.0)) throw DomainError("economy needs q_max > 0");
  }

  static CertificationEconomy custom(
      std::function<double(double, double)> f,
      std::function<double(double, double)> g, TypeDistribution F,
      TypeDistribution G, double c, double q_max, double lambda,
      double f_bound = 1.0) {
    CertificationEconomy e(FKind::kCustom, GKind::kCustom, std::move(F),
                           std::move(G), c, q_max, lambda, f_bound);
    e.fcustom_ = std::move(f);
    e.gcustom_ = std::move(g);
    return e;
  }

  double f(double q, double phi) const {
    switch (fkind_) {
      case FKind::kPhiTimesQ: return phi * q;
      case FKind::kQOnly: return q;
      case FKind::kCustom: return fcustom_(q, phi);
    }
    return 0.0;
  }

  double g(double q, double psi) const {
    switch (gkind_) {
      case GKind::kQuadraticOverPsi: return q * q / (2.0 * psi);
      case GKind::kHingeTwiceQMinusPsi: return std::max(0.0, 2.0 * (q - psi));
      case GKind::kZero: return 0.0;
      case GKind::kCustom: return gcustom_(q, psi);
    }
    return 0.0;
  }

  FKind f_kind() const { return fkind_; }
  GKind g_kind() const { return gkind_; }
  const TypeDistribution& consumers() const { return F_; }
  const TypeDistribution& producers() const { return G_; }
  double verification_cost() const { return c_; }
  double q_max() const { return q_max_; }
  double lambda() const { return lambda_; }
  double f_bound() const { return f_bound_; }

 private:
  FKind fkind_;
  GKind gkind_;
  std::function<double(double, double)> fcustom_;
  std::function<double(double, double)> gcustom_;
  TypeDistribution F_;
  TypeDistribution G_;
  double c_;
  double q_max_;
  double lambda_;
  double f_bound_;
};

}  // namespace certmenu
