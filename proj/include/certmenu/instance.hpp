#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "certmenu/config.hpp"
#include "certmenu/economy.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

// Serializable description of a problem instance: either a pricing
// instance or a certification economy, named from the built-in zoo or
// assembled from parametric components.  Building materializes and
// validates the described objects.
//
// Zoo entries:
//   linear_equal_revenue  params: H        v = theta*q, equal-revenue [1,H]
//   piecewise_gap         params: H        v = min(q, 2*theta-q), same types
//   linear_uniform        (no params)      v = theta*q, uniform [0,1]
//   quadratic_screening   params: a, b, c  economy f = phi*q, g = q^2/(2*psi),
//                                          both types uniform [a, b]
//   custom                full component description in JSON
struct InstanceSpec {
  std::string kind;  // "pricing" | "economy"
  std::string name;
  std::map<std::string, double> params;
  nlohmann::json components;  // family/distribution description

  bool is_economy() const { return kind == "economy"; }

  PricingInstance build_pricing(const Config& cfg = default_config()) const;
  CertificationEconomy build_economy(const Config& cfg = default_config()) const;

  nlohmann::json to_json() const;
  static InstanceSpec from_json(const nlohmann::json& j);
};

InstanceSpec make_named_instance(const std::string& name,
                                 const std::map<std::string, double>& params = {});

nlohmann::json distribution_to_json(const TypeDistribution& d);
TypeDistribution distribution_from_json(const nlohmann::json& j);

// The economy behind the piecewise gap valuation: f(q; phi) = q,
// g(q; psi) = max(0, 2(q - psi)), both types equal-revenue on [1, H].
// Values exceed 1, so the declared consumer-value bound is 2H.
CertificationEconomy make_gap_economy(double H);

}  // namespace certmenu
