#include "certmenu/welfare.hpp"

#include <algorithm>
#include <cmath>

#include "certmenu/errors.hpp"
#include "certmenu/quadrature.hpp"

namespace certmenu {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNegInfW = -std::numeric_limits<double>::infinity();

double best_quality_value(const PricingInstance& inst, double theta) {
  // Golden-section max of the concave q -> v(q; theta) over [0, q_max].
  double lo = 0.0, hi = inst.q_max();
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = inst.value(x1, theta), f2 = inst.value(x2, theta);
  for (int it = 0; it < 72; ++it) {
    if (f1 < f2) {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo); f2 = inst.value(x2, theta);
    } else {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo); f1 = inst.value(x1, theta);
    }
  }
  double q = 0.5 * (lo + hi);
  return std::max({inst.value(q, theta), inst.value(inst.q_max(), theta), 0.0});
}

}  // namespace

DenseWelfareResult welfare_optimal_dense(const PricingInstance& inst,
                                         int n_grid, const Config& cfg) {
  if (n_grid < 2) throw PreconditionError("welfare_optimal_dense needs n_grid >= 2");
  std::vector<MenuItem> items;
  items.reserve(std::size_t(n_grid));
  for (int j = 1; j <= n_grid; ++j)
    items.push_back({inst.q_max() * double(j) / double(n_grid), inst.c});
  DenseWelfareResult res;
  res.menu = normalize_menu(std::move(items), inst.q_max());
  res.welfare = segment_outcome(inst, res.menu, cfg).welfare;
  return res;
}

double first_best_welfare(const PricingInstance& inst, const Config& cfg) {
  return expect(
      inst.dist,
      [&](double theta) {
        return std::max(0.0, best_quality_value(inst, theta) - inst.c);
      },
      cfg);
}

WelfareDpResult welfare_dp(const PricingInstance& inst, double eps, int k,
                           const Config& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must be in (0, 1)");
  if (k < 1) throw PreconditionError("welfare_dp needs k >= 1");

  const int nq = int(std::floor(inst.q_max() / eps + 1e-12));
  if (nq < 1)
    throw DomainError("quality grid is empty; eps exceeds q_max");
  if (double(nq) * double(nq) / 2.0 > 2e6)
    throw ResourceError("welfare_dp pair table too large; increase eps",
                        double(nq) * double(nq) / 2.0);

  WelfareDpResult res;
  res.k = k;
  res.qualities.resize(std::size_t(nq));
  for (int j = 0; j < nq; ++j) res.qualities[std::size_t(j)] = (j + 1) * eps;

  const double t_lo = inst.dist.support_lo();
  const double t_hi = inst.dist.support_hi();
  const double c = inst.c;

  // Base layer: single at-cost item.
  std::vector<double> base_m(std::size_t(nq), kNegInfW), base_l(std::size_t(nq), kNaN);
  for (int j = 0; j < nq; ++j) {
    const double q = res.qualities[std::size_t(j)];
    auto buyer = lowest_buyer(inst, {q, c}, cfg);
    if (!buyer) continue;
    base_l[std::size_t(j)] = *buyer;
    base_m[std::size_t(j)] = expect_between(
        inst.dist, [&](double t) { return inst.value(q, t) - c; }, *buyer,
        t_hi, cfg);
  }

  // Pair tables: indifference type between two at-cost items and the
  // welfare gained by the switching types.  Layer-independent.
  std::vector<double> pair_theta(std::size_t(nq) * std::size_t(nq), kNaN);
  std::vector<double> pair_inc(std::size_t(nq) * std::size_t(nq), kNegInfW);
  auto pidx = [&](int hi_q, int lo_q) {
    return std::size_t(hi_q) * std::size_t(nq) + std::size_t(lo_q);
  };
  for (int j = 1; j < nq; ++j) {
    const double q = res.qualities[std::size_t(j)];
    for (int i = 0; i < j; ++i) {
      const double qp = res.qualities[std::size_t(i)];
      auto diff = [&](double t) { return inst.value(q, t) - inst.value(qp, t); };
      if (diff(t_hi) < 0.0) continue;  // nobody ever upgrades
      double theta =
          diff(t_lo) >= 0.0 ? t_lo : bisect_lowest(diff, t_lo, t_hi, cfg);
      pair_theta[pidx(j, i)] = theta;
      pair_inc[pidx(j, i)] =
          expect_between(inst.dist, diff, theta, t_hi, cfg);
    }
  }

  std::vector<double> m_prev, l_prev;
  std::vector<double> m_cur = base_m, l_cur = base_l;
  res.M = base_m;
  res.L = base_l;
  std::vector<std::vector<int>> choice(std::size_t(k),
                                       std::vector<int>(std::size_t(nq), -2));
  for (int j = 0; j < nq; ++j)
    if (base_m[std::size_t(j)] > kNegInfW) choice[0][std::size_t(j)] = -1;  // single

  for (int layer = 2; layer <= k; ++layer) {
    m_prev = m_cur;
    l_prev = l_cur;
    for (int j = 0; j < nq; ++j) {
      double best = m_prev[std::size_t(j)];
      double best_l = l_prev[std::size_t(j)];
      int best_ch = best > kNegInfW ? -3 : -2;  // -3 = stay, -2 = dead
      for (int i = 0; i < j; ++i) {
        double prev = m_prev[std::size_t(i)];
        if (prev == kNegInfW) continue;
        double theta = pair_theta[pidx(j, i)];
        if (std::isnan(theta)) continue;
        if (l_prev[std::size_t(i)] >= theta - cfg.tol_compare) continue;
        double val = prev + pair_inc[pidx(j, i)];
        if (val > best) {
          best = val;
          best_l = theta;
          best_ch = i;
        }
      }
      m_cur[std::size_t(j)] = best;
      l_cur[std::size_t(j)] = best_l;
      choice[std::size_t(layer - 1)][std::size_t(j)] = best_ch;
    }
    res.M.insert(res.M.end(), m_cur.begin(), m_cur.end());
    res.L.insert(res.L.end(), l_cur.begin(), l_cur.end());
  }

  double best = 0.0;
  int best_j = -1;
  for (int j = 0; j < nq; ++j)
    if (m_cur[std::size_t(j)] > best) {
      best = m_cur[std::size_t(j)];
      best_j = j;
    }
  res.welfare_dp_value = best;

  std::vector<MenuItem> items;
  int j = best_j;
  for (int layer = k; layer >= 1 && j >= 0; --layer) {
    int ch = choice[std::size_t(layer - 1)][std::size_t(j)];
    if (ch == -3) continue;  // stay
    if (ch == -2) throw InternalError("welfare dp hit a dead cell");
    items.push_back({res.qualities[std::size_t(j)], c});
    j = ch;  // -1 ends the chain
  }
  res.menu = normalize_menu(items, inst.q_max());
  res.welfare_exact = segment_outcome(inst, res.menu, cfg).welfare;
  return res;
}

double wel_minus_rev(const PricingInstance& inst, const Menu& menu,
                     const Config& cfg) {
  MarketOutcome out = segment_outcome(inst, menu, cfg);
  return out.welfare - out.revenue;
}

}  // namespace certmenu
