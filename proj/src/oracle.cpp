#include "certmenu/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "certmenu/errors.hpp"

namespace certmenu {

DiscreteInstance discretize_types(const PricingInstance& inst, int n) {
  if (n < 1) throw PreconditionError("discretize_types needs n >= 1");
  DiscreteInstance di;
  di.c = inst.c;
  di.types.resize(n);
  di.masses.assign(n, 1.0 / double(n));
  for (int j = 0; j < n; ++j)
    di.types[j] = inst.dist.quantile((double(j) + 0.5) / double(n));
  di.suffix_mass.assign(n + 1, 0.0);
  for (int j = n - 1; j >= 0; --j)
    di.suffix_mass[j] = di.suffix_mass[j + 1] + di.masses[j];
  return di;
}

DiscreteInstance DiscreteInstance::with_grids(const PricingInstance& inst,
                                              std::vector<double> qs,
                                              std::vector<double> ps) const {
  DiscreteInstance di = *this;
  di.qualities = std::move(qs);
  di.prices = std::move(ps);
  for (double q : di.qualities)
    if (!(q > 0.0)) throw PreconditionError("grid qualities must be positive");
  di.v_table.resize(di.qualities.size() * di.types.size());
  for (std::size_t qi = 0; qi < di.qualities.size(); ++qi)
    for (std::size_t tj = 0; tj < di.types.size(); ++tj)
      di.v_table[qi * di.types.size() + tj] =
          inst.value(di.qualities[qi], di.types[tj]);
  return di;
}

int discrete_choice(const DiscreteInstance& di,
                    const std::vector<DiscreteItem>& items, int tj) {
  int best = -1;  // trivial item
  double best_u = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    double u = di.v(items[i].quality_index, tj) - items[i].price;
    if (u >= best_u) {
      best = int(i);
      best_u = u;
    }
  }
  return best;
}

double evaluate_discrete(const DiscreteInstance& di,
                         const std::vector<DiscreteItem>& items,
                         bool welfare_objective) {
  double total = 0.0;
  for (int tj = 0; tj < di.n_types(); ++tj) {
    int pick = discrete_choice(di, items, tj);
    if (pick < 0) continue;
    const DiscreteItem& it = items[std::size_t(pick)];
    double contribution =
        welfare_objective ? di.v(it.quality_index, tj) - di.c
                          : it.price - di.c;
    total += di.masses[std::size_t(tj)] * contribution;
  }
  return total;
}

namespace {

bool lex_less(const std::vector<DiscreteItem>& a,
              const std::vector<DiscreteItem>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].quality_index != b[i].quality_index)
      return a[i].quality_index < b[i].quality_index;
    if (a[i].price != b[i].price) return a[i].price < b[i].price;
  }
  return a.size() < b.size();
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}

}  // namespace

OracleResult brute_force_optimal(const DiscreteInstance& di, int k,
                                 Objective objective, const Config& cfg) {
  const int nq = di.n_qualities();
  const int np = di.n_prices();
  if (np == 0 || nq == 0)
    throw PreconditionError("oracle needs non-empty quality and price grids");

  double count = 0.0;
  for (int m = 1; m <= std::min(k, nq); ++m)
    count += binom(nq, m) * std::pow(double(np), m);
  if (count > double(cfg.oracle_budget))
    throw ResourceError("oracle enumeration over budget", count);

  const bool welfare = objective == Objective::kWelfare;
  OracleResult best;
  best.value = 0.0;  // the trivial menu

  std::vector<int> chosen_q;   // ascending quality indices
  std::vector<DiscreteItem> items;

  // Enumerates quality subsets of size m (lexicographic), and for each
  // subset all price assignments in odometer order, so ties resolve to
  // the lexicographically smallest menu without extra comparisons.
  auto eval_current = [&]() {
    ++best.candidates;
    double value = evaluate_discrete(di, items, welfare);
    if (value > best.value + 0.0 ||
        (value == best.value && !best.items.empty() &&
         lex_less(items, best.items))) {
      best.value = value;
      best.items = items;
    }
  };

  std::vector<int> price_idx;
  auto enumerate_prices = [&](auto&& self, std::size_t pos) -> void {
    if (pos == chosen_q.size()) {
      eval_current();
      return;
    }
    for (int pi = 0; pi < np; ++pi) {
      items[pos] = DiscreteItem{chosen_q[std::size_t(pos)], di.prices[std::size_t(pi)]};
      self(self, pos + 1);
    }
  };

  auto enumerate_subsets = [&](auto&& self, int start, int remaining) -> void {
    if (!chosen_q.empty()) {
      items.assign(chosen_q.size(), DiscreteItem{0, 0.0});
      enumerate_prices(enumerate_prices, 0);
    }
    if (remaining == 0) return;
    for (int qi = start; qi < nq; ++qi) {
      chosen_q.push_back(qi);
      self(self, qi + 1, remaining - 1);
      chosen_q.pop_back();
    }
  };
  enumerate_subsets(enumerate_subsets, 0, std::min(k, nq));

  std::vector<MenuItem> raw;
  for (const auto& it : best.items)
    raw.push_back({di.qualities[std::size_t(it.quality_index)], it.price});
  double q_max = di.qualities.empty() ? 1.0 : di.qualities.back();
  best.menu = normalize_menu(raw, q_max);
  return best;
}

}  // namespace certmenu
