#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>

#include "certmenu/distribution.hpp"
#include "certmenu/errors.hpp"

namespace certmenu {

// Buyer valuation family v(q; theta): concave in quantity q on [0, q_max],
// v(0; theta) = 0, single-crossing in (q, theta), with slope bound lambda
// on dv/dq at q = 0.
//
// Built-in kinds keep evaluation branch-cheap for the DP inner loops; the
// custom kind accepts an arbitrary callable.
class ValuationFamily {
 public:
  enum class Kind {
    kLinear,          // theta * q
    kPiecewiseGap,    // min(q, 2*theta - q)
    kQuadraticScreen, // theta*q - q^2/(2*theta)
    kCustom,
  };

  static ValuationFamily linear(double q_max, double lambda) {
    return ValuationFamily(Kind::kLinear, q_max, lambda);
  }
  static ValuationFamily piecewise_gap(double q_max) {
    return ValuationFamily(Kind::kPiecewiseGap, q_max, 1.0);
  }
  static ValuationFamily quadratic_screen(double q_max, double lambda) {
    return ValuationFamily(Kind::kQuadraticScreen, q_max, lambda);
  }
  static ValuationFamily custom(std::function<double(double, double)> eval,
                                double q_max, double lambda,
                                std::string label = "custom") {
    ValuationFamily v(Kind::kCustom, q_max, lambda);
    v.custom_ = std::move(eval);
    v.label_ = std::move(label);
    return v;
  }

  double operator()(double q, double theta) const {
    switch (kind_) {
      case Kind::kLinear:
        return theta * q;
      case Kind::kPiecewiseGap:
        return std::min(q, 2.0 * theta - q);
      case Kind::kQuadraticScreen:
        return theta * q - q * q / (2.0 * theta);
      case Kind::kCustom:
        return custom_(q, theta);
    }
    return 0.0;
  }

  Kind kind() const { return kind_; }
  double q_max() const { return q_max_; }
  double lambda() const { return lambda_; }
  const std::string& label() const { return label_; }

 private:
  ValuationFamily(Kind k, double q_max, double lambda)
      : kind_(k), q_max_(q_max), lambda_(lambda) {
    if (!(q_max > 0.0)) throw DomainError("valuation family needs q_max > 0");
    if (!(lambda > 0.0)) throw DomainError("valuation family needs lambda > 0");
    switch (k) {
      case Kind::kLinear: label_ = "linear"; break;
      case Kind::kPiecewiseGap: label_ = "piecewise_gap"; break;
      case Kind::kQuadraticScreen: label_ = "quadratic_screen"; break;
      case Kind::kCustom: break;
    }
  }

  Kind kind_;
  double q_max_;
  double lambda_;
  std::function<double(double, double)> custom_;
  std::string label_;
};

// The reduced single-buyer non-linear pricing problem: valuation family,
// buyer type distribution, and a constant verification cost c charged for
// any non-trivial sale.
struct PricingInstance {
  ValuationFamily v;
  TypeDistribution dist;
  double c = 0.0;

  double q_max() const { return v.q_max(); }
  double lambda() const { return v.lambda(); }
  double value(double q, double theta) const { return v(q, theta); }
};

}  // namespace certmenu
