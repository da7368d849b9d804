#include "certmenu/validate.hpp"

#include <cmath>

#include "certmenu/errors.hpp"

namespace certmenu {

namespace {

constexpr std::size_t kMaxReported = 64;

void check_finite(double v, double q, double theta) {
  if (!std::isfinite(v))
    throw NumericError("non-finite valuation at q=" + std::to_string(q) +
                           ", theta=" + std::to_string(theta),
                       v);
}

// Core grid checker shared by the pricing-side and economy-side
// validators.  eval(q, t) must be concave in q with eval(0, t) = 0 and
// satisfy weak single-crossing; reverse flips the inequality (producer
// costs).
template <typename Eval>
ValidationReport run_grid_checks(const Eval& eval, double q_max,
                                 double lambda, double t_lo, double t_hi,
                                 int n_grid, bool reverse, bool check_slope,
                                 double tol) {
  if (n_grid < 3) throw PreconditionError("validator needs n_grid >= 3");
  ValidationReport rep;

  std::vector<double> qs(n_grid), ts(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    qs[i] = q_max * double(i) / double(n_grid - 1);
    ts[i] = t_lo + (t_hi - t_lo) * double(i) / double(n_grid - 1);
  }

  std::vector<std::vector<double>> val(n_grid, std::vector<double>(n_grid));
  for (int a = 0; a < n_grid; ++a)
    for (int i = 0; i < n_grid; ++i) {
      val[a][i] = eval(qs[i], ts[a]);
      check_finite(val[a][i], qs[i], ts[a]);
    }

  for (int a = 0; a < n_grid; ++a) {
    if (std::abs(val[a][0]) > tol && rep.normalization.size() < kMaxReported)
      rep.normalization.push_back({0.0, ts[a], val[a][0]});
    for (int i = 1; i + 1 < n_grid; ++i) {
      // Midpoint value must not fall below the chord (equispaced grid).
      double chord = 0.5 * (val[a][i - 1] + val[a][i + 1]);
      double lhs = reverse ? chord - val[a][i] : val[a][i] - chord;
      if (lhs < -tol && rep.concavity.size() < kMaxReported)
        rep.concavity.push_back({qs[i], ts[a], lhs});
    }
  }

  for (int a = 0; a + 1 < n_grid; ++a)
    for (int i = 0; i < n_grid; ++i) {
      double d = val[a + 1][i] - val[a][i];
      if (reverse) d = -d;
      if (d < -tol && rep.type_monotone.size() < kMaxReported)
        rep.type_monotone.push_back({qs[i], ts[a], d});
    }

  // Single-crossing on adjacent-in-theta pairs over all quantity pairs;
  // adjacent theta pairs imply the general case by telescoping.
  for (int a = 0; a + 1 < n_grid; ++a) {
    for (int i = 0; i < n_grid; ++i)
      for (int j = i + 1; j < n_grid; ++j) {
        double inc_low = val[a][j] - val[a][i];
        double inc_high = val[a + 1][j] - val[a + 1][i];
        double gap = reverse ? inc_low - inc_high : inc_high - inc_low;
        if (gap < -tol) {
          if (rep.single_crossing.size() < kMaxReported)
            rep.single_crossing.push_back(
                {ts[a], ts[a + 1], qs[i], qs[j], inc_low, inc_high});
        } else if (gap <= tol) {
          if (rep.strict_warnings.size() < kMaxReported)
            rep.strict_warnings.push_back(
                {ts[a], ts[a + 1], qs[i], qs[j], inc_low, inc_high});
        }
      }
  }

  if (check_slope) {
    double delta = q_max / double(4 * n_grid);
    for (int a = 0; a < n_grid; ++a) {
      double slope = eval(delta, ts[a]) / delta;
      check_finite(slope, delta, ts[a]);
      if (slope > lambda + tol && rep.slope_bound.size() < kMaxReported)
        rep.slope_bound.push_back({delta, ts[a], slope});
    }
  }
  return rep;
}

}  // namespace

ValidationReport validate_single_crossing(const ValuationFamily& family,
                                          double theta_lo, double theta_hi,
                                          int n_grid, const Config& cfg) {
  return run_grid_checks(
      [&](double q, double t) { return family(q, t); }, family.q_max(),
      family.lambda(), theta_lo, theta_hi, n_grid, /*reverse=*/false,
      /*check_slope=*/true, cfg.tol_compare);
}

ValidationReport validate_single_crossing(const PricingInstance& inst,
                                          int n_grid, const Config& cfg) {
  return validate_single_crossing(inst.v, inst.dist.support_lo(),
                                  inst.dist.support_hi(), n_grid, cfg);
}

EconomyReport validate_economy(const CertificationEconomy& econ, int n_grid,
                               const Config& cfg) {
  EconomyReport rep;
  rep.consumer = run_grid_checks(
      [&](double q, double phi) { return econ.f(q, phi); }, econ.q_max(),
      econ.lambda(), econ.consumers().support_lo(),
      econ.consumers().support_hi(), n_grid, /*reverse=*/false,
      /*check_slope=*/true, cfg.tol_compare);
  rep.producer = run_grid_checks(
      [&](double q, double psi) { return econ.g(q, psi); }, econ.q_max(),
      econ.lambda(), econ.producers().support_lo(),
      econ.producers().support_hi(), n_grid, /*reverse=*/true,
      /*check_slope=*/false, cfg.tol_compare);

  const auto& F = econ.consumers();
  for (int a = 0; a < n_grid && rep.f_bound.size() < kMaxReported; ++a) {
    double phi = F.support_lo() +
                 (F.support_hi() - F.support_lo()) * a / double(n_grid - 1);
    double prev = 0.0;
    for (int i = 0; i < n_grid; ++i) {
      double q = econ.q_max() * i / double(n_grid - 1);
      double v = econ.f(q, phi);
      if (v > econ.f_bound() + cfg.tol_compare) {
        rep.f_bound.push_back({q, phi, v});
        break;
      }
      if (v < prev - cfg.tol_compare &&
          rep.f_monotone.size() < kMaxReported)
        rep.f_monotone.push_back({q, phi, v - prev});
      prev = v;
    }
  }
  const auto& G = econ.producers();
  for (int a = 0; a < n_grid && rep.g_monotone.size() < kMaxReported; ++a) {
    double psi = G.support_lo() +
                 (G.support_hi() - G.support_lo()) * a / double(n_grid - 1);
    double prev = 0.0;
    for (int i = 1; i < n_grid; ++i) {
      double q = econ.q_max() * i / double(n_grid - 1);
      double gv = econ.g(q, psi);
      if (gv < prev - cfg.tol_compare) {
        rep.g_monotone.push_back({q, psi, gv - prev});
        break;
      }
      prev = gv;
    }
  }
  return rep;
}

void require_valid(const PricingInstance& inst, int n_grid, const Config& cfg) {
  if (!(inst.c >= 0.0)) throw ValidationError("pricing instance needs c >= 0");
  auto rep = validate_single_crossing(inst, n_grid, cfg);
  if (!rep.pass())
    throw ValidationError("pricing instance failed validation with " +
                          std::to_string(rep.violation_count()) +
                          " grid violations");
}

void require_valid(const CertificationEconomy& econ, int n_grid,
                   const Config& cfg) {
  auto rep = validate_economy(econ, n_grid, cfg);
  if (!rep.pass())
    throw ValidationError("economy failed validation");
}

}  // namespace certmenu
