#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "certmenu/errors.hpp"

namespace certmenu {

// A buyer/producer/consumer type distribution on a compact support
// [lo, hi], given by its cdf and quantile function.  The continuous part
// is stored separately from an optional atom at the upper endpoint, so
// survival(h) = 1 - cdf(h-) is exact at h = hi.
//
// Supported families:
//   uniform(lo, hi)
//   equal_revenue(H):  Pr[theta > h] = 1/h on [1, H], atom 1/H at H
//   piecewise_cdf(knots): linear interpolation through [theta, F] knots;
//       a final knot below 1 leaves an atom at the top of the support
class TypeDistribution {
 public:
  enum class Kind { kUniform, kEqualRevenue, kPiecewiseCdf };

  static TypeDistribution uniform(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw DomainError("uniform distribution requires finite lo < hi");
    TypeDistribution d;
    d.kind_ = Kind::kUniform;
    d.lo_ = lo;
    d.hi_ = hi;
    d.atom_ = 0.0;
    return d;
  }

  static TypeDistribution equal_revenue(double H) {
    if (!(H >= 1.0) || !std::isfinite(H))
      throw DomainError("equal-revenue distribution requires H >= 1");
    TypeDistribution d;
    d.kind_ = Kind::kEqualRevenue;
    d.lo_ = 1.0;
    d.hi_ = H;
    d.atom_ = 1.0 / H;
    return d;
  }

  static TypeDistribution piecewise_cdf(std::vector<std::array<double, 2>> knots) {
    if (knots.size() < 2) throw DomainError("piecewise cdf needs >= 2 knots");
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i][0] > knots[i - 1][0]) || knots[i][1] < knots[i - 1][1] - 1e-15)
        throw DomainError("piecewise cdf knots must be strictly increasing in theta "
                          "and non-decreasing in F");
    }
    if (std::abs(knots.front()[1]) > 1e-12)
      throw DomainError("piecewise cdf must start at F = 0");
    if (knots.back()[1] > 1.0 + 1e-12)
      throw DomainError("piecewise cdf must end at F <= 1");
    TypeDistribution d;
    d.kind_ = Kind::kPiecewiseCdf;
    d.lo_ = knots.front()[0];
    d.hi_ = knots.back()[0];
    d.atom_ = std::max(0.0, 1.0 - knots.back()[1]);
    d.knots_ = std::move(knots);
    d.knots_.front()[1] = 0.0;
    return d;
  }

  Kind kind() const { return kind_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  bool has_atom() const { return atom_ > 0.0; }
  double atom_mass() const { return atom_; }

  // Continuous part of the cdf; continuous_cdf(hi) = 1 - atom_mass.
  double continuous_cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0 - atom_;
    switch (kind_) {
      case Kind::kUniform:
        return (x - lo_) / (hi_ - lo_);
      case Kind::kEqualRevenue:
        return 1.0 - 1.0 / x;
      case Kind::kPiecewiseCdf:
        return interp_cdf(x);
    }
    return 0.0;
  }

  // Full right-continuous cdf: cdf(hi) = 1 including the atom.
  double cdf(double x) const {
    if (x >= hi_) return 1.0;
    return continuous_cdf(x);
  }

  // survival(h) = Pr[theta >= h] = 1 - cdf(h-).  At h = hi this is the
  // atom mass (zero for atomless distributions).
  double survival(double h) const {
    if (h <= lo_) return 1.0;
    if (h > hi_) return 0.0;
    return 1.0 - continuous_cdf(h);
  }

  double quantile(double u) const {
    if (u < -1e-12 || u > 1.0 + 1e-12)
      throw DomainError("quantile argument outside [0, 1]");
    u = std::clamp(u, 0.0, 1.0);
    if (u >= 1.0 - atom_) return hi_;
    switch (kind_) {
      case Kind::kUniform:
        return lo_ + u * (hi_ - lo_);
      case Kind::kEqualRevenue:
        return std::min(hi_, 1.0 / (1.0 - u));
      case Kind::kPiecewiseCdf:
        return interp_quantile(u);
    }
    return lo_;
  }

  const std::vector<std::array<double, 2>>& knots() const { return knots_; }

  std::string family_name() const {
    switch (kind_) {
      case Kind::kUniform: return "uniform";
      case Kind::kEqualRevenue: return "equal_revenue";
      case Kind::kPiecewiseCdf: return "piecewise_cdf";
    }
    return "?";
  }

 private:
  TypeDistribution() = default;

  double interp_cdf(double x) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const std::array<double, 2>& k) {
                                 return v < k[0];
                               });
    std::size_t j = std::size_t(it - knots_.begin());  // first knot > x; j >= 1
    const auto& a = knots_[j - 1];
    const auto& b = knots_[j];
    double t = (x - a[0]) / (b[0] - a[0]);
    return a[1] + t * (b[1] - a[1]);
  }

  double interp_quantile(double u) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), u,
                               [](double v, const std::array<double, 2>& k) {
                                 return v < k[1];
                               });
    std::size_t j = std::min<std::size_t>(std::size_t(it - knots_.begin()),
                                          knots_.size() - 1);
    if (j == 0) j = 1;
    // Skip flat cdf stretches: move left until F actually increases.
    while (j > 1 && knots_[j][1] <= knots_[j - 1][1]) --j;
    const auto& a = knots_[j - 1];
    const auto& b = knots_[j];
    if (b[1] <= a[1]) return a[0];
    double t = (u - a[1]) / (b[1] - a[1]);
    t = std::clamp(t, 0.0, 1.0);
    return a[0] + t * (b[0] - a[0]);
  }

  Kind kind_ = Kind::kUniform;
  double lo_ = 0.0, hi_ = 1.0, atom_ = 0.0;
  std::vector<std::array<double, 2>> knots_;
};

}  // namespace certmenu
