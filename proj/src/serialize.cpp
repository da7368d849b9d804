#include "certmenu/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace certmenu {

nlohmann::json menu_to_json(const Menu& menu) {
  nlohmann::json arr = nlohmann::json::array();
  for (const MenuItem& it : menu.items()) arr.push_back({it.quality, it.price});
  return arr;
}

Menu menu_from_json(const nlohmann::json& j, double q_max) {
  std::vector<MenuItem> raw;
  for (const auto& row : j)
    raw.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
  return normalize_menu(std::move(raw), q_max);
}

nlohmann::json outcome_to_json(const MarketOutcome& out, const Menu& menu) {
  nlohmann::json j;
  nlohmann::json segs = nlohmann::json::array();
  for (const Segment& s : out.segments) {
    const MenuItem& it = menu[std::size_t(s.item_index)];
    segs.push_back({s.theta_from, s.theta_to, it.quality, it.price, s.mass});
  }
  j["segments"] = segs;
  j["revenue"] = out.revenue;
  j["welfare"] = out.welfare;
  j["buyer_surplus"] = out.buyer_surplus;
  return j;
}

std::string outcome_to_csv(const MarketOutcome& out, const Menu& menu) {
  std::ostringstream os;
  os.precision(17);
  os << "theta_from,theta_to,quality,price,mass\n";
  for (const Segment& s : out.segments) {
    const MenuItem& it = menu[std::size_t(s.item_index)];
    os << s.theta_from << ',' << s.theta_to << ',' << it.quality << ','
       << it.price << ',' << s.mass << '\n';
  }
  return os.str();
}

nlohmann::json game_to_json(const GameOutcome& out, const Menu& menu) {
  nlohmann::json j;
  nlohmann::json segs = nlohmann::json::array();
  for (const Segment& s : out.producer_segments) {
    const MenuItem& it = menu[std::size_t(s.item_index)];
    segs.push_back({s.theta_from, s.theta_to, it.quality, it.price, s.mass});
  }
  j["producer_segments"] = segs;
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t l = 0; l < out.traded_qualities.size(); ++l)
    levels.push_back({out.traded_qualities[l], out.traded_prices[l],
                      out.traded_fees[l]});
  j["traded_levels"] = levels;  // [quality, market_price, certifier_fee]
  j["certifier_revenue"] = out.certifier_revenue;
  j["producer_surplus"] = out.producer_surplus;
  j["consumer_surplus"] = out.consumer_surplus;
  j["total_welfare"] = out.total_welfare;
  return j;
}

std::string game_to_csv(const GameOutcome& out, const Menu& menu) {
  std::ostringstream os;
  os.precision(17);
  os << "psi_from,psi_to,quality,fee,mass,market_price\n";
  for (const Segment& s : out.producer_segments) {
    const MenuItem& it = menu[std::size_t(s.item_index)];
    double price = 0.0;
    for (std::size_t l = 0; l < out.traded_qualities.size(); ++l)
      if (out.traded_qualities[l] == it.quality) price = out.traded_prices[l];
    os << s.theta_from << ',' << s.theta_to << ',' << it.quality << ','
       << it.price << ',' << s.mass << ',' << price << '\n';
  }
  return os.str();
}

nlohmann::json diagnostics_to_json(const DpDiagnostics& d) {
  nlohmann::json j;
  j["cells"] = d.cells;
  j["grid_q"] = d.grid_q;
  j["grid_p"] = d.grid_p;
  j["wall_ms"] = d.wall_ms;
  j["revenue_dp"] = d.revenue_dp;
  j["revenue_exact"] = d.revenue_exact;
  j["path"] = d.path;
  j["k_used"] = d.k_used;
  return j;
}

std::string json_digest(const nlohmann::json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return std::string(buf);
}

}  // namespace certmenu
