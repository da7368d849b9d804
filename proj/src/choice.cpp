#include "certmenu/choice.hpp"

#include <cmath>
#include <random>

#include "certmenu/errors.hpp"
#include "certmenu/quadrature.hpp"

namespace certmenu {

int best_response(const PricingInstance& inst, const Menu& menu, double theta) {
  int best = 0;
  double best_u = item_utility(inst, menu[0], theta);
  for (std::size_t j = 1; j < menu.size(); ++j) {
    double u = item_utility(inst, menu[j], theta);
    if (u >= best_u) {  // ties go to the higher quality
      best = int(j);
      best_u = u;
    }
  }
  return best;
}

std::optional<double> indifference_type(const PricingInstance& inst,
                                        const MenuItem& item_a,
                                        const MenuItem& item_b,
                                        const Config& cfg) {
  if (!(item_a.quality < item_b.quality))
    throw PreconditionError("indifference_type requires q_a < q_b");
  const double lo = inst.dist.support_lo();
  const double hi = inst.dist.support_hi();
  auto diff = [&](double t) {
    return item_utility(inst, item_b, t) - item_utility(inst, item_a, t);
  };
  if (diff(hi) < 0.0) return std::nullopt;  // top type still prefers a
  if (diff(lo) > 0.0) return std::nullopt;  // every type prefers b
  if (diff(lo) == 0.0) return lo;
  return bisect_lowest(diff, lo, hi, cfg);
}

std::optional<double> lowest_buyer(const PricingInstance& inst,
                                   const MenuItem& item, const Config& cfg) {
  if (!(item.quality > 0.0))
    throw PreconditionError("lowest_buyer requires a non-trivial item");
  const double lo = inst.dist.support_lo();
  const double hi = inst.dist.support_hi();
  auto diff = [&](double t) { return inst.value(item.quality, t) - item.price; };
  if (diff(hi) < 0.0) return std::nullopt;
  if (diff(lo) >= 0.0) return lo;
  return bisect_lowest(diff, lo, hi, cfg);
}

namespace {

struct ActiveItem {
  int index;
  double from;
};

// Walks items in quality order and stacks the regions where each is the
// running best response; monotone selection makes the regions a
// partition with weakly increasing item index.
std::vector<ActiveItem> build_cutoffs(const PricingInstance& inst,
                                      const Menu& menu, const Config& cfg) {
  const double lo = inst.dist.support_lo();
  const double hi = inst.dist.support_hi();
  std::vector<ActiveItem> stack;
  stack.push_back({0, lo});
  for (std::size_t j = 1; j < menu.size(); ++j) {
    const MenuItem& bj = menu[j];
    while (true) {
      if (stack.empty()) {
        stack.push_back({int(j), lo});
        break;
      }
      const ActiveItem top = stack.back();
      const MenuItem& bi = menu[top.index];
      auto diff = [&](double t) {
        return item_utility(inst, bj, t) - item_utility(inst, bi, t);
      };
      if (diff(hi) < 0.0) break;  // j never chosen
      if (diff(top.from) >= 0.0) {
        stack.pop_back();  // j takes over i's whole region (ties included)
        continue;
      }
      double cut = bisect_lowest(diff, top.from, hi, cfg);
      stack.push_back({int(j), cut});
      break;
    }
  }
  return stack;
}

}  // namespace

MarketOutcome segment_outcome(const PricingInstance& inst, const Menu& menu,
                              const Config& cfg) {
  const double hi = inst.dist.support_hi();
  auto stack = build_cutoffs(inst, menu, cfg);

  MarketOutcome out;
  for (std::size_t s = 0; s < stack.size(); ++s) {
    Segment seg;
    seg.item_index = stack[s].index;
    seg.theta_from = stack[s].from;
    seg.theta_to = (s + 1 < stack.size()) ? stack[s + 1].from : hi;
    bool top_segment = (s + 1 == stack.size());
    double mass = inst.dist.continuous_cdf(seg.theta_to) -
                  inst.dist.continuous_cdf(seg.theta_from);
    if (top_segment) mass += inst.dist.atom_mass();
    seg.mass = mass;
    if (mass <= 1e-12) continue;
    out.segments.push_back(seg);
  }

  for (const Segment& seg : out.segments) {
    const MenuItem& it = menu[seg.item_index];
    const double unit_cost = it.quality > 0.0 ? inst.c : 0.0;
    out.revenue += (it.price - unit_cost) * seg.mass;
    if (seg.item_index != 0) {
      out.buyer_surplus += expect_between(
          inst.dist,
          [&](double t) { return item_utility(inst, it, t); }, seg.theta_from,
          seg.theta_to, cfg);
    }
  }
  out.welfare = out.revenue + out.buyer_surplus;

  // Probe agreement with the direct best response.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int p = 0; p < cfg.probe_count; ++p) {
    double theta = inst.dist.quantile(unif(rng));
    int chosen = best_response(inst, menu, theta);
    int mapped = 0;
    for (const Segment& seg : out.segments)
      if (theta >= seg.theta_from) mapped = seg.item_index;
    double u_chosen = item_utility(inst, menu[chosen], theta);
    double u_mapped = item_utility(inst, menu[mapped], theta);
    if (u_chosen - u_mapped > cfg.tol_compare * (1.0 + std::abs(u_chosen)))
      throw InternalError(
          "segment map disagrees with best response at theta=" +
          std::to_string(theta) + " (single-crossing violation?)");
  }
  return out;
}

}  // namespace certmenu
