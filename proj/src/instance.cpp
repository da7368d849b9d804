#include "certmenu/instance.hpp"

#include <cmath>

#include "certmenu/errors.hpp"
#include "certmenu/reduction.hpp"
#include "certmenu/validate.hpp"

namespace certmenu {

namespace {

double get_param(const std::map<std::string, double>& params,
                 const std::string& key, std::optional<double> fallback = {}) {
  auto it = params.find(key);
  if (it != params.end()) return it->second;
  if (fallback) return *fallback;
  throw DomainError("missing instance parameter: " + key);
}

ValuationFamily family_from_name(const std::string& fam, double q_max,
                                 double lambda) {
  if (fam == "linear") return ValuationFamily::linear(q_max, lambda);
  if (fam == "piecewise_gap") return ValuationFamily::piecewise_gap(q_max);
  if (fam == "quadratic_screen")
    return ValuationFamily::quadratic_screen(q_max, lambda);
  throw DomainError("unknown valuation family: " + fam);
}

}  // namespace

nlohmann::json distribution_to_json(const TypeDistribution& d) {
  nlohmann::json j;
  j["family"] = d.family_name();
  switch (d.kind()) {
    case TypeDistribution::Kind::kUniform:
      j["lo"] = d.support_lo();
      j["hi"] = d.support_hi();
      break;
    case TypeDistribution::Kind::kEqualRevenue:
      j["H"] = d.support_hi();
      break;
    case TypeDistribution::Kind::kPiecewiseCdf: {
      nlohmann::json knots = nlohmann::json::array();
      for (const auto& k : d.knots()) knots.push_back({k[0], k[1]});
      j["knots"] = knots;
      break;
    }
  }
  return j;
}

TypeDistribution distribution_from_json(const nlohmann::json& j) {
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "uniform")
    return TypeDistribution::uniform(j.at("lo").get<double>(),
                                     j.at("hi").get<double>());
  if (fam == "equal_revenue")
    return TypeDistribution::equal_revenue(j.at("H").get<double>());
  if (fam == "piecewise_cdf") {
    std::vector<std::array<double, 2>> knots;
    for (const auto& k : j.at("knots"))
      knots.push_back({k.at(0).get<double>(), k.at(1).get<double>()});
    return TypeDistribution::piecewise_cdf(std::move(knots));
  }
  throw DomainError("unknown distribution family: " + fam);
}

InstanceSpec make_named_instance(const std::string& name,
                                 const std::map<std::string, double>& params) {
  InstanceSpec spec;
  spec.name = name;
  spec.params = params;

  if (name == "linear_equal_revenue" || name == "piecewise_gap") {
    double H = get_param(params, "H");
    if (!(H >= 1.0)) throw DomainError("zoo entry requires H >= 1");
    spec.kind = "pricing";
    spec.components["distribution"] = {{"family", "equal_revenue"}, {"H", H}};
    spec.components["c"] = get_param(params, "c", 0.0);
    if (name == "linear_equal_revenue") {
      spec.components["family"] = "linear";
      spec.components["q_max"] = 1.0;
      spec.components["lambda"] = H;
    } else {
      spec.components["family"] = "piecewise_gap";
      spec.components["q_max"] = 2.0 * H;
      spec.components["lambda"] = 1.0;
    }
  } else if (name == "linear_uniform") {
    spec.kind = "pricing";
    spec.components["family"] = "linear";
    spec.components["distribution"] = {
        {"family", "uniform"}, {"lo", 0.0}, {"hi", 1.0}};
    spec.components["q_max"] = 1.0;
    spec.components["lambda"] = 1.0;
    spec.components["c"] = get_param(params, "c", 0.0);
  } else if (name == "quadratic_screening") {
    double a = get_param(params, "a", 0.25);
    double b = get_param(params, "b", 1.0);
    if (!(a > 0.0) || !(b > a))
      throw DomainError("quadratic_screening requires 0 < a < b");
    spec.kind = "economy";
    spec.components["f"] = "phi_times_q";
    spec.components["g"] = "quadratic_over_psi";
    spec.components["consumers"] = {
        {"family", "uniform"}, {"lo", a}, {"hi", b}};
    spec.components["producers"] = spec.components["consumers"];
    spec.components["c"] = get_param(params, "c", 0.0);
    spec.components["q_max"] = 1.0;
    spec.components["lambda"] = b;
    spec.components["f_bound"] = std::max(1.0, b);
  } else if (name == "custom") {
    throw DomainError("custom instances must be built from a JSON document");
  } else {
    throw DomainError("unknown zoo instance: " + name);
  }
  return spec;
}

PricingInstance InstanceSpec::build_pricing(const Config& cfg) const {
  if (kind == "economy")
    return reduce_to_pricing(build_economy(cfg), cfg);
  const auto& c = components;
  double q_max = c.at("q_max").get<double>();
  double lambda = c.at("lambda").get<double>();
  PricingInstance inst{
      family_from_name(c.at("family").get<std::string>(), q_max, lambda),
      distribution_from_json(c.at("distribution")),
      c.value("c", 0.0)};
  require_valid(inst, 50, cfg);
  return inst;
}

CertificationEconomy InstanceSpec::build_economy(const Config& cfg) const {
  if (kind != "economy")
    throw DomainError("instance '" + name + "' is not an economy");
  const auto& c = components;
  const std::string fname = c.at("f").get<std::string>();
  const std::string gname = c.at("g").get<std::string>();
  CertificationEconomy::FKind fk;
  if (fname == "phi_times_q") fk = CertificationEconomy::FKind::kPhiTimesQ;
  else if (fname == "q_only") fk = CertificationEconomy::FKind::kQOnly;
  else throw DomainError("unknown consumer value family: " + fname);
  CertificationEconomy::GKind gk;
  if (gname == "quadratic_over_psi")
    gk = CertificationEconomy::GKind::kQuadraticOverPsi;
  else if (gname == "hinge")
    gk = CertificationEconomy::GKind::kHingeTwiceQMinusPsi;
  else if (gname == "zero")
    gk = CertificationEconomy::GKind::kZero;
  else throw DomainError("unknown producer cost family: " + gname);

  CertificationEconomy econ(
      fk, gk, distribution_from_json(c.at("consumers")),
      distribution_from_json(c.at("producers")), c.value("c", 0.0),
      c.at("q_max").get<double>(), c.at("lambda").get<double>(),
      c.value("f_bound", 1.0));
  require_valid(econ, 50, cfg);
  return econ;
}

nlohmann::json InstanceSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["name"] = name;
  j["params"] = params;
  for (auto it = components.begin(); it != components.end(); ++it)
    j[it.key()] = it.value();
  return j;
}

InstanceSpec InstanceSpec::from_json(const nlohmann::json& j) {
  const std::string name = j.at("name").get<std::string>();
  if (name != "custom") {
    std::map<std::string, double> params;
    if (j.contains("params"))
      params = j.at("params").get<std::map<std::string, double>>();
    return make_named_instance(name, params);
  }
  InstanceSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  spec.name = name;
  if (j.contains("params"))
    spec.params = j.at("params").get<std::map<std::string, double>>();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "kind" || it.key() == "name" || it.key() == "params")
      continue;
    spec.components[it.key()] = it.value();
  }
  return spec;
}

CertificationEconomy make_gap_economy(double H) {
  if (!(H >= 1.0)) throw DomainError("gap economy requires H >= 1");
  auto er = TypeDistribution::equal_revenue(H);
  return CertificationEconomy(CertificationEconomy::FKind::kQOnly,
                              CertificationEconomy::GKind::kHingeTwiceQMinusPsi,
                              er, er, /*c=*/0.0, /*q_max=*/2.0 * H,
                              /*lambda=*/1.0, /*f_bound=*/2.0 * H);
}

}  // namespace certmenu
