#include "certmenu/market.hpp"

#include <algorithm>
#include <cmath>

#include "certmenu/errors.hpp"
#include "certmenu/quadrature.hpp"
#include "certmenu/reduction.hpp"

namespace certmenu {

MarketOutcome producer_choices(const CertificationEconomy& econ,
                               const Menu& menu, const Config& cfg) {
  PricingInstance reduced = reduce_to_pricing(econ, cfg);
  return segment_outcome(reduced, menu, cfg);
}

std::vector<double> clearing_prices(const CertificationEconomy& econ,
                                    const Menu& menu,
                                    const MarketOutcome& producer_segments,
                                    const Config& cfg) {
  (void)cfg;
  // Traded qualities in segment order; quality 0 anchors the chain at 0.
  std::vector<double> qualities{0.0};
  std::vector<double> prices{0.0};
  for (std::size_t s = 0; s < producer_segments.segments.size(); ++s) {
    const Segment& seg = producer_segments.segments[s];
    double q = menu[std::size_t(seg.item_index)].quality;
    if (q <= qualities.back()) continue;
    double phi_b = matched_consumer(econ, seg.theta_from);
    double p = prices.back() + econ.f(q, phi_b) - econ.f(qualities.back(), phi_b);
    qualities.push_back(q);
    prices.push_back(p);
  }
  return prices;
}

namespace {

// Index into traded_qualities for the level assigned to quantile u.
int assigned_level(const GameOutcome& out, const Menu& menu,
                   const TypeDistribution& producers, double u) {
  double psi = producers.quantile(u);
  double q = 0.0;
  for (const Segment& seg : out.producer_segments)
    if (psi >= seg.theta_from) q = menu[std::size_t(seg.item_index)].quality;
  for (std::size_t i = 0; i < out.traded_qualities.size(); ++i)
    if (out.traded_qualities[i] == q) return int(i);
  return 0;
}

}  // namespace

GameOutcome full_game_outcome(const CertificationEconomy& econ,
                              const Menu& menu, const Config& cfg) {
  PricingInstance reduced = reduce_to_pricing(econ, cfg);
  MarketOutcome prod = segment_outcome(reduced, menu, cfg);

  GameOutcome out;
  out.producer_segments = prod.segments;
  out.traded_qualities = {0.0};
  out.traded_fees = {0.0};
  for (const Segment& seg : prod.segments) {
    const MenuItem& it = menu[std::size_t(seg.item_index)];
    if (it.quality > out.traded_qualities.back()) {
      out.traded_qualities.push_back(it.quality);
      out.traded_fees.push_back(it.price);
    }
  }
  out.traded_prices = clearing_prices(econ, menu, prod, cfg);

  const auto& F = econ.consumers();
  const auto& G = econ.producers();
  const double c = econ.verification_cost();
  for (const Segment& seg : prod.segments) {
    const MenuItem& it = menu[std::size_t(seg.item_index)];
    int level = 0;
    for (std::size_t i = 0; i < out.traded_qualities.size(); ++i)
      if (out.traded_qualities[i] == it.quality) level = int(i);
    const double q = it.quality;
    const double fee = it.price;
    const double price = out.traded_prices[std::size_t(level)];

    out.certifier_revenue += (fee - (q > 0.0 ? c : 0.0)) * seg.mass;
    out.producer_surplus += expect_between(
        G, [&](double psi) { return price - econ.g(q, psi) - fee; },
        seg.theta_from, seg.theta_to, cfg);
    // The matched consumer block occupies the same quantile range.
    double phi_from = econ.consumers().quantile(G.cdf(seg.theta_from));
    double phi_to = seg.theta_to >= G.support_hi()
                        ? F.support_hi()
                        : econ.consumers().quantile(G.cdf(seg.theta_to));
    out.consumer_surplus += expect_between(
        F, [&](double phi) { return econ.f(q, phi) - price; }, phi_from,
        phi_to, cfg);
  }
  out.total_welfare =
      out.certifier_revenue + out.producer_surplus + out.consumer_surplus;

  if (std::abs(out.certifier_revenue - prod.revenue) > 1e-6)
    throw InternalError("full-game certifier revenue diverged from the "
                        "reduced problem");
  if (std::abs(out.total_welfare - prod.welfare) > 1e-6)
    throw InternalError("full-game welfare diverged from the reduced problem");
  return out;
}

WalrasianReport verify_walrasian(const CertificationEconomy& econ,
                                 const Menu& menu, const GameOutcome& out,
                                 int n_probe, const Config& cfg) {
  WalrasianReport rep;
  rep.n_probe = n_probe;
  const auto& F = econ.consumers();
  const auto& G = econ.producers();
  const double tol = 1e-7;

  auto consumer_surplus_at = [&](double phi, int level) {
    return econ.f(out.traded_qualities[std::size_t(level)], phi) -
           out.traded_prices[std::size_t(level)];
  };

  // Demand satisfaction: each probed consumer holds a most-preferred
  // traded good (quality 0 at price 0 doubles as the outside option).
  for (int i = 0; i < n_probe && rep.demand_ok; ++i) {
    double u = (double(i) + 0.5) / double(n_probe);
    double phi = F.quantile(u);
    int level = assigned_level(out, menu, G, u);
    double held = consumer_surplus_at(phi, level);
    for (std::size_t l = 0; l < out.traded_qualities.size(); ++l)
      if (consumer_surplus_at(phi, int(l)) > held + tol) {
        rep.demand_ok = false;
        rep.detail = "consumer at quantile " + std::to_string(u) +
                     " prefers quality " +
                     std::to_string(out.traded_qualities[l]);
        break;
      }
  }

  // Measure balance: consumer and producer masses per traded level agree.
  std::vector<double> prod_mass(out.traded_qualities.size(), 0.0);
  std::vector<double> cons_mass(out.traded_qualities.size(), 0.0);
  for (const Segment& seg : out.producer_segments) {
    double q = menu[std::size_t(seg.item_index)].quality;
    for (std::size_t l = 0; l < out.traded_qualities.size(); ++l)
      if (out.traded_qualities[l] == q) {
        prod_mass[l] += seg.mass;
        double u_from = G.cdf(seg.theta_from);
        double u_to = seg.theta_to >= G.support_hi() ? 1.0 : G.cdf(seg.theta_to);
        double phi_from = F.quantile(u_from);
        double phi_to = F.quantile(u_to);
        cons_mass[l] += F.continuous_cdf(phi_to) - F.continuous_cdf(phi_from);
        if (u_to >= 1.0 - 1e-15) cons_mass[l] += F.atom_mass();
      }
  }
  for (std::size_t l = 0; l < prod_mass.size() && rep.balance_ok; ++l)
    if (std::abs(prod_mass[l] - cons_mass[l]) > 1e-7) {
      rep.balance_ok = false;
      rep.detail = "measure imbalance at quality " +
                   std::to_string(out.traded_qualities[l]);
    }

  // Producer no-deviation.  Untraded menu items have no posted price; the
  // best supportable price is the demand-compatible supremum over
  // consumers of value minus realized surplus.
  auto supporting_price = [&](double q) {
    for (std::size_t l = 0; l < out.traded_qualities.size(); ++l)
      if (out.traded_qualities[l] == q) return out.traded_prices[l];
    double best = 0.0;
    for (int i = 0; i < n_probe; ++i) {
      double u = (double(i) + 0.5) / double(n_probe);
      double phi = F.quantile(u);
      int level = assigned_level(out, menu, G, u);
      best = std::max(best, econ.f(q, phi) - consumer_surplus_at(phi, level));
    }
    return best;
  };
  std::vector<double> menu_price(menu.size());
  for (std::size_t j = 0; j < menu.size(); ++j)
    menu_price[j] = supporting_price(menu[j].quality);

  for (int i = 0; i < n_probe && rep.producer_ok; ++i) {
    double u = (double(i) + 0.5) / double(n_probe);
    double psi = G.quantile(u);
    int held_item = 0;
    for (const Segment& seg : out.producer_segments)
      if (psi >= seg.theta_from) held_item = seg.item_index;
    const MenuItem& held = menu[std::size_t(held_item)];
    double held_u = supporting_price(held.quality) - econ.g(held.quality, psi) -
                    held.price;
    for (std::size_t j = 0; j < menu.size(); ++j) {
      double alt = menu_price[j] - econ.g(menu[j].quality, psi) - menu[j].price;
      if (alt > held_u + tol) {
        rep.producer_ok = false;
        rep.detail = "producer at quantile " + std::to_string(u) +
                     " prefers certificate " + std::to_string(menu[j].quality);
        break;
      }
    }
  }
  return rep;
}

}  // namespace certmenu
