#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "certmenu/errors.hpp"

namespace certmenu {

struct MenuItem {
  double quality = 0.0;
  double price = 0.0;
  friend bool operator==(const MenuItem& a, const MenuItem& b) {
    return a.quality == b.quality && a.price == b.price;
  }
};

// A certification menu: quality thresholds with prices, sorted by quality,
// always containing the free trivial item (0, 0) exactly once.  Prices may
// be negative (discretized menus carry per-item discounts).
class Menu {
 public:
  Menu() : items_{MenuItem{0.0, 0.0}} {}
  explicit Menu(std::vector<MenuItem> sorted_items)
      : items_(std::move(sorted_items)) {}

  const std::vector<MenuItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  const MenuItem& operator[](std::size_t i) const { return items_[i]; }
  bool trivial_only() const { return items_.size() == 1; }

  // Non-decreasing prices in quality.
  bool is_monotone(double tol = 0.0) const {
    for (std::size_t i = 1; i < items_.size(); ++i)
      if (items_[i].price < items_[i - 1].price - tol) return false;
    return true;
  }

 private:
  std::vector<MenuItem> items_;
};

// Canonical form: sort by quality, insert the trivial item if absent, and
// among duplicate qualities keep only the lowest price (no buyer pays more
// for the same quality).  Prices are left as given; monotonization is a
// separate transformation.
inline Menu normalize_menu(std::vector<MenuItem> raw, double q_max) {
  for (const auto& it : raw) {
    if (!std::isfinite(it.price) || !std::isfinite(it.quality))
      throw DomainError("menu items must be finite");
    if (it.quality < 0.0 || it.quality > q_max + 1e-12)
      throw DomainError("menu quality outside [0, q_max]");
  }
  // The trivial certificate is pinned to (0, 0) by the model; any raw
  // quality-0 entry collapses onto it.
  std::erase_if(raw, [](const MenuItem& it) { return it.quality == 0.0; });
  std::sort(raw.begin(), raw.end(), [](const MenuItem& a, const MenuItem& b) {
    if (a.quality != b.quality) return a.quality < b.quality;
    return a.price < b.price;
  });
  std::vector<MenuItem> out;
  out.reserve(raw.size() + 1);
  out.push_back(MenuItem{0.0, 0.0});
  for (const auto& it : raw) {
    if (it.quality == out.back().quality) continue;
    out.push_back(it);
  }
  return Menu(std::move(out));
}

}  // namespace certmenu
