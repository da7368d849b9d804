#include "certmenu/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "certmenu/errors.hpp"

namespace certmenu {

Menu drop_unpurchased(const PricingInstance& inst, const Menu& menu,
                      const Config& cfg) {
  MarketOutcome out = segment_outcome(inst, menu, cfg);
  std::set<int> purchased;
  for (const Segment& s : out.segments) purchased.insert(s.item_index);
  std::vector<MenuItem> kept;
  for (std::size_t i = 0; i < menu.size(); ++i)
    if (i == 0 || purchased.count(int(i))) kept.push_back(menu[i]);
  return Menu(std::move(kept));
}

namespace {

// Index of the first item whose price exceeds every later price, or -1.
int find_price_peak(const std::vector<MenuItem>& items) {
  double suffix_max = -std::numeric_limits<double>::infinity();
  int peak = -1;
  for (int i = int(items.size()) - 1; i >= 0; --i) {
    if (i + 1 < int(items.size()) && items[std::size_t(i)].price > suffix_max)
      peak = i;
    suffix_max = std::max(suffix_max, items[std::size_t(i)].price);
  }
  return peak;
}

}  // namespace

Menu monotone_prune(const PricingInstance& inst, const Menu& menu,
                    const Config& cfg) {
  const double rev_in = segment_outcome(inst, menu, cfg).revenue;
  Menu pruned = drop_unpurchased(inst, menu, cfg);
  std::vector<MenuItem> items = pruned.items();

  while (!Menu(items).is_monotone()) {
    int peak = find_price_peak(items);
    if (peak >= 0) {
      items.resize(std::size_t(peak) + 1);
      continue;
    }
    // Interior block: locate the first descent, then the first later item
    // priced above everything in the block.
    int t = -1;
    for (std::size_t i = 1; i < items.size(); ++i)
      if (items[i].price < items[i - 1].price) {
        t = int(i);
        break;
      }
    if (t < 0) throw InternalError("non-monotone menu without a descent");
    double block_max = items[std::size_t(t)].price;
    int j = -1;
    for (int m = t + 1; m < int(items.size()); ++m) {
      if (items[std::size_t(m)].price > block_max) {
        j = m;
        break;
      }
      block_max = std::max(block_max, items[std::size_t(m)].price);
    }
    if (j < 0)
      throw InternalError("interior low-price block with no closing item");
    items.erase(items.begin() + t, items.begin() + j);
  }

  Menu out{std::move(items)};
  const double rev_out = segment_outcome(inst, out, cfg).revenue;
  if (rev_out < rev_in - cfg.tol_compare * (1.0 + std::abs(rev_in)))
    throw InternalError("monotone prune decreased revenue from " +
                        std::to_string(rev_in) + " to " +
                        std::to_string(rev_out));
  return out;
}

Menu sparsify(const PricingInstance& inst, const Menu& menu, double eps,
              const Config& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must be in (0, 1)");
  if (!menu.is_monotone(1e-12))
    throw PreconditionError("sparsify requires a monotone menu");
  const auto& items = menu.items();
  if (menu.trivial_only()) return menu;

  const double rev_in = segment_outcome(inst, menu, cfg).revenue;
  const double p_top = std::max(1.0, items.back().price);

  std::set<std::size_t> picked;
  const int n_buckets = int(std::floor(p_top / eps + 1e-12));
  for (int l = 0; l <= n_buckets; ++l) {
    const double a = l * eps;
    // With monotone prices the first item at or above the boundary has the
    // cheapest qualifying price; extend over its equal-price run to the
    // highest quality, which is the variant buyers actually take.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < items.size(); ++i)
      if (items[i].price >= a - 1e-12) {
        pick = i;
        break;
      }
    if (pick == 0) continue;
    while (pick + 1 < items.size() &&
           items[pick + 1].price == items[pick].price)
      ++pick;
    picked.insert(pick);
  }
  std::vector<MenuItem> kept;
  for (std::size_t i : picked) kept.push_back(items[i]);
  Menu out = normalize_menu(kept, inst.q_max());

  const double rev_out = segment_outcome(inst, out, cfg).revenue;
  if (rev_out < rev_in - eps - 1e-6)
    throw InternalError("sparsify lost more than eps of revenue");
  return out;
}

Menu discretize_menu(const PricingInstance& inst, const Menu& menu,
                     double eps, const Config& cfg) {
  (void)cfg;
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (!menu.is_monotone(1e-12))
    throw PreconditionError("discretize_menu requires a monotone menu");
  const auto& items = menu.items();
  std::vector<MenuItem> out;
  const double log1e = std::log1p(eps);
  for (std::size_t i = 1; i < items.size(); ++i) {
    double q = items[i].quality;
    double p = items[i].price;
    if (q < eps) continue;  // worth at most lambda*eps of revenue
    int l = int(std::floor(std::log(q / eps) / log1e + 1e-12));
    double q_round = eps * std::pow(1.0 + eps, l);
    while (q_round > q * (1.0 + 1e-12)) q_round = eps * std::pow(1.0 + eps, --l);
    double p_scaled = p * (q_round / q);
    double p_floor = std::floor(p_scaled / eps + 1e-12) * eps;
    double p_disc = p_floor - 3.0 * double(i) * eps;
    out.push_back({q_round, p_disc});
  }
  return normalize_menu(out, inst.q_max());
}

}  // namespace certmenu
