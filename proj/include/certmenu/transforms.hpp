#pragma once

#include "certmenu/choice.hpp"
#include "certmenu/config.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/valuation.hpp"

namespace certmenu {

// Drops items purchased by a zero-measure set of types.
Menu drop_unpurchased(const PricingInstance& inst, const Menu& menu,
                      const Config& cfg = default_config());

// Rewrites the menu until prices are non-decreasing in quality, by
// repeatedly (1) truncating above an item whose price exceeds every later
// price, or (2) deleting a maximal interior block priced below both of
// its bracketing items.  Never-purchased items are dropped first.  Exact
// revenue never decreases; a regression beyond tolerance raises
// InternalError.
Menu monotone_prune(const PricingInstance& inst, const Menu& menu,
                    const Config& cfg = default_config());

// Thins a monotone menu to one item per price bucket of width eps (the
// cheapest item at or above each bucket boundary), keeping revenue within
// eps of the input.  Bucket boundaries span [0, max(1, top price)].
Menu sparsify(const PricingInstance& inst, const Menu& menu, double eps,
              const Config& cfg = default_config());

// Rounds a monotone menu onto the DP grids: qualities down to the
// geometric grid, prices scaled by q'/q and rounded down to a multiple of
// eps, then discounted by 3*i*eps for the i-th item.  Items with quality
// below eps are dropped (their revenue is at most lambda*eps).  The
// result may be non-monotone and may contain negative prices.
Menu discretize_menu(const PricingInstance& inst, const Menu& menu,
                     double eps, const Config& cfg = default_config());

}  // namespace certmenu
