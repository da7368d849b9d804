#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "certmenu/choice.hpp"
#include "certmenu/dp.hpp"
#include "certmenu/market.hpp"
#include "certmenu/menu.hpp"

namespace certmenu {

nlohmann::json menu_to_json(const Menu& menu);
Menu menu_from_json(const nlohmann::json& j, double q_max);

// Segments serialize as [theta_from, theta_to, quality, price, mass] rows.
nlohmann::json outcome_to_json(const MarketOutcome& out, const Menu& menu);
std::string outcome_to_csv(const MarketOutcome& out, const Menu& menu);

nlohmann::json game_to_json(const GameOutcome& out, const Menu& menu);
std::string game_to_csv(const GameOutcome& out, const Menu& menu);

nlohmann::json diagnostics_to_json(const DpDiagnostics& d);

// FNV-1a over the canonical (sorted-key, compact) JSON encoding.
std::string json_digest(const nlohmann::json& j);

}  // namespace certmenu
