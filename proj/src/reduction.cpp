#include "certmenu/reduction.hpp"

#include <cmath>

#include "certmenu/errors.hpp"
#include "certmenu/validate.hpp"

namespace certmenu {

namespace {

bool same_distribution(const TypeDistribution& a, const TypeDistribution& b) {
  if (a.kind() != b.kind()) return false;
  if (a.support_lo() != b.support_lo() || a.support_hi() != b.support_hi())
    return false;
  if (a.atom_mass() != b.atom_mass()) return false;
  return a.knots() == b.knots();
}

}  // namespace

double matched_consumer(const CertificationEconomy& econ, double psi) {
  const auto& G = econ.producers();
  if (psi < G.support_lo() - 1e-12 || psi > G.support_hi() + 1e-12)
    throw DomainError("producer type outside the support of G");
  return econ.consumers().quantile(G.cdf(psi));
}

PricingInstance reduce_to_pricing(const CertificationEconomy& econ,
                                  const Config& cfg) {
  const bool identity_matching =
      same_distribution(econ.consumers(), econ.producers());

  ValuationFamily v = [&]() -> ValuationFamily {
    // Closed forms when the matching is the identity.
    if (identity_matching) {
      if (econ.f_kind() == CertificationEconomy::FKind::kPhiTimesQ &&
          econ.g_kind() == CertificationEconomy::GKind::kQuadraticOverPsi)
        return ValuationFamily::quadratic_screen(econ.q_max(), econ.lambda());
      if (econ.f_kind() == CertificationEconomy::FKind::kQOnly &&
          econ.g_kind() == CertificationEconomy::GKind::kHingeTwiceQMinusPsi)
        return ValuationFamily::piecewise_gap(econ.q_max());
      if (econ.f_kind() == CertificationEconomy::FKind::kPhiTimesQ &&
          econ.g_kind() == CertificationEconomy::GKind::kZero)
        return ValuationFamily::linear(econ.q_max(), econ.lambda());
    }
    CertificationEconomy copy = econ;
    return ValuationFamily::custom(
        [copy](double q, double psi) {
          double phi = copy.consumers().quantile(copy.producers().cdf(psi));
          return copy.f(q, phi) - copy.g(q, psi);
        },
        econ.q_max(), econ.lambda(), "reduced");
  }();

  PricingInstance inst{std::move(v), econ.producers(),
                       econ.verification_cost()};
  auto rep = validate_single_crossing(inst, 50, cfg);
  if (!rep.pass())
    throw ValidationError(
        "reduced valuation failed validation (" +
        std::to_string(rep.violation_count()) + " grid violations)");
  return inst;
}

}  // namespace certmenu
