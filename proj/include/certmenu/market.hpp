#pragma once

#include <string>
#include <vector>

#include "certmenu/choice.hpp"
#include "certmenu/config.hpp"
#include "certmenu/economy.hpp"
#include "certmenu/menu.hpp"

namespace certmenu {

// Full certification-game outcome: producer certificate choices, market
// prices for the traded quality levels, and the surplus accounting.
// certifier_revenue + producer_surplus + consumer_surplus = total_welfare.
struct GameOutcome {
  std::vector<Segment> producer_segments;  // over producer types psi
  std::vector<double> traded_qualities;    // ascending, starts at 0
  std::vector<double> traded_prices;       // market price per traded quality
  std::vector<double> traded_fees;         // certifier fee per traded quality
  double certifier_revenue = 0.0;
  double producer_surplus = 0.0;
  double consumer_surplus = 0.0;
  double total_welfare = 0.0;
};

struct WalrasianReport {
  bool demand_ok = true;      // consumers hold a most-preferred good
  bool balance_ok = true;     // consumer and producer masses agree per level
  bool producer_ok = true;    // no producer gains by re-certifying
  int n_probe = 0;
  std::string detail;         // first violation, if any
  bool pass() const { return demand_ok && balance_ok && producer_ok; }
};

// Producer certificate selection for a menu: the demand segmentation of
// the reduced pricing problem, expressed over producer types.
MarketOutcome producer_choices(const CertificationEconomy& econ,
                               const Menu& menu,
                               const Config& cfg = default_config());

// Market-clearing consumer prices for the traded quality levels, anchored
// at price 0 for quality 0 and chained through the boundary consumers
// (the images of the producer cutoffs under the assortative matching).
std::vector<double> clearing_prices(const CertificationEconomy& econ,
                                    const Menu& menu,
                                    const MarketOutcome& producer_segments,
                                    const Config& cfg = default_config());

// Equilibrium verification on quantile-stratified probes.
WalrasianReport verify_walrasian(const CertificationEconomy& econ,
                                 const Menu& menu, const GameOutcome& outcome,
                                 int n_probe,
                                 const Config& cfg = default_config());

// Composes producer choices, clearing prices, and the surplus accounting;
// checks that revenue and welfare match the reduced problem within 1e-6.
GameOutcome full_game_outcome(const CertificationEconomy& econ,
                              const Menu& menu,
                              const Config& cfg = default_config());

}  // namespace certmenu
