#pragma once

#include <cmath>
#include <functional>

#include "certmenu/config.hpp"
#include "certmenu/distribution.hpp"
#include "certmenu/errors.hpp"

namespace certmenu {

namespace detail {

// Adaptive Simpson on [a, b] with absolute error target tol.
// Throws NumericError (carrying the best estimate) if the depth cap is
// reached on a subinterval whose error estimate still exceeds its share.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth,
                        int max_depth, bool& converged) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double h = b - a;
  double left = h / 12.0 * (fa + 4.0 * flm + fm);
  double right = h / 12.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || h <= 1e-14 * (1.0 + std::abs(a) + std::abs(b)))
    return left + right + delta / 15.0;
  if (depth >= max_depth) {
    converged = false;
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                          max_depth, converged) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1,
                          max_depth, converged);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol, int max_depth) {
  if (!(b > a)) return 0.0;
  double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  bool converged = true;
  double v = adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0, max_depth,
                              converged);
  if (!converged)
    throw NumericError("quadrature did not converge to the requested tolerance", v);
  return v;
}

}  // namespace detail

// E[g(theta)] under dist.  Integrates the continuous part in quantile
// space (exact change of variables) and adds the atom contribution.
template <typename G>
double expect(const TypeDistribution& dist, const G& g,
              const Config& cfg = default_config()) {
  double u_top = 1.0 - dist.atom_mass();
  double v = detail::integrate(
      [&](double u) { return g(dist.quantile(u)); }, 0.0, u_top, cfg.tol_quad,
      cfg.quad_max_depth);
  if (dist.has_atom()) v += dist.atom_mass() * g(dist.support_hi());
  return v;
}

// E[g(theta); theta in [t_lo, t_hi]] (unnormalized).  The atom at the top
// of the support is included iff include_atom; by default it belongs to
// any range whose upper end reaches the support top.
template <typename G>
double expect_between(const TypeDistribution& dist, const G& g, double t_lo,
                      double t_hi, const Config& cfg = default_config()) {
  bool include_atom = t_hi >= dist.support_hi();
  double u_lo = dist.continuous_cdf(t_lo);
  double u_hi = dist.continuous_cdf(t_hi);
  double v = 0.0;
  if (u_hi > u_lo)
    v = detail::integrate([&](double u) { return g(dist.quantile(u)); }, u_lo,
                          u_hi, cfg.tol_quad, cfg.quad_max_depth);
  if (include_atom && dist.has_atom())
    v += dist.atom_mass() * g(dist.support_hi());
  return v;
}

}  // namespace certmenu
