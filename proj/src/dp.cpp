#include "certmenu/dp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <thread>

#include "certmenu/choice.hpp"
#include "certmenu/errors.hpp"

namespace certmenu {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------
// Continuous-type solver.
//
// Layer update for a cell (Q, a): the best of keeping the (k-1)-item
// solution, and extending some (Q', b) solution with (Q, a) on top.  The
// extension gain is T[d] = d*step * Pr[theta >= theta*(d*step)] where
// theta* is the type indifferent between the two items; it depends on
// (Q, Q') and the price difference only, so it is tabulated once per
// quality pair and shared across layers and price offsets.
//
// Candidates are restricted to non-decreasing prices (d >= 0); by the
// price-monotonicity of optimal menus this does not change the final
// maximum.  A candidate (Q', b) becomes usable only from the offset at
// which the indifference type exceeds the sub-solution's lowest buyer
// (otherwise the new item would strand the old top item with no buyers
// and the telescoped revenue would be miscounted).
// ---------------------------------------------------------------------

struct PairTable {
  std::size_t offset = 0;
  int dmax = -1;       // largest usable price-step difference; -1 = dead
  bool concave = false;
  double t_top = kNegInf;  // max of T over the table, for pruning
};

// Backpointer packing.
enum class CellKind : std::uint64_t { kNone = 0, kSingle = 1, kStay = 2, kChain = 3 };
inline std::uint64_t pack_choice(CellKind kind, int qp = 0, int b = 0) {
  return (std::uint64_t(kind) << 56) | (std::uint64_t(qp) << 32) |
         std::uint64_t(b);
}
inline CellKind choice_kind(std::uint64_t c) { return CellKind(c >> 56); }
inline int choice_q(std::uint64_t c) { return int((c >> 32) & 0xffffff); }
inline int choice_b(std::uint64_t c) { return int(c & 0xffffffff); }

class ContinuousSolver {
 public:
  ContinuousSolver(const PricingInstance& inst, double eps, int k,
                   const Config& cfg)
      : inst_(inst), cfg_(cfg), eps_(eps) {
    k_ = k > 0 ? k : int(std::ceil(1.0 / eps));
    step_ = k > 0 ? eps : eps * eps;
    grids_ = make_revenue_grids(inst, eps, k_, step_);
    nq_ = grids_.n_q();
    np_ = grids_.n_p();
    theta_lo_ = inst.dist.support_lo();
    theta_hi_ = inst.dist.support_hi();
  }

  DpResult solve() {
    auto t0 = std::chrono::steady_clock::now();
    layout();
    build_base();
    build_pair_tables();

    bool exhaustive = pick_path();
    alloc_rows();
    export_layer(0);

    for (int layer = 2; layer <= k_; ++layer) {
      std::swap(m_prev_, m_cur_);
      std::swap(l_prev_, l_cur_);
      prev_row_max_.assign(std::size_t(nq_), kNegInf);
      for (int q = 0; q < nq_; ++q)
        for (int a = 0; a <= acap_[std::size_t(q)]; ++a)
          prev_row_max_[std::size_t(q)] =
              std::max(prev_row_max_[std::size_t(q)], m_prev_[std::size_t(q)][std::size_t(a)]);
      parallel_for(nq_, cfg_.threads, [&](int q) {
        if (exhaustive)
          fill_row_exhaustive(q, layer);
        else
          fill_row_envelope(q, layer);
      });
      export_layer(layer - 1);
    }

    DpResult res = reconstruct();
    res.diag.path = exhaustive ? "exhaustive" : "envelope";
    res.diag.grid_q = nq_;
    res.diag.grid_p = np_;
    res.diag.cells = total_cells_ * std::size_t(k_);
    res.diag.k_used = k_;
    res.diag.envelope_fallback_pairs = fallback_pairs_;
    auto t1 = std::chrono::steady_clock::now();
    res.diag.wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    return res;
  }

 private:
  void layout() {
    acap_.resize(std::size_t(nq_));
    top_value_.resize(std::size_t(nq_));
    for (int q = 0; q < nq_; ++q) {
      double vhi = inst_.value(grids_.qualities[std::size_t(q)], theta_hi_);
      top_value_[std::size_t(q)] = vhi;
      int cap = grids_.zero_price_index + int(std::floor(vhi / step_ + 1e-9));
      acap_[std::size_t(q)] = std::min(cap, np_ - 1);
    }
    cell_off_.assign(std::size_t(nq_) + 1, 0);
    for (int q = 0; q < nq_; ++q)
      cell_off_[std::size_t(q) + 1] =
          cell_off_[std::size_t(q)] +
          std::size_t(std::max(0, acap_[std::size_t(q)] + 1));
    total_cells_ = cell_off_[std::size_t(nq_)];

    // Pair table extents and the memory estimate, before any heavy work.
    pairs_.assign(std::size_t(nq_) * std::size_t(nq_), PairTable{});
    std::size_t arena = 0;
    for (int q = 1; q < nq_; ++q) {
      if (acap_[std::size_t(q)] < 0) continue;
      for (int qp = 0; qp < q; ++qp) {
        if (acap_[std::size_t(qp)] < 0) continue;
        double dhi = top_value_[std::size_t(q)] - top_value_[std::size_t(qp)];
        if (dhi < 0.0) continue;
        int dmax = std::min(int(std::floor(dhi / step_ + 1e-9)),
                            acap_[std::size_t(q)]);
        if (dmax < 0) continue;
        PairTable& pt = pairs_[pair_index(q, qp)];
        pt.offset = arena;
        pt.dmax = dmax;
        arena += std::size_t(dmax) + 1;
      }
    }
    arena_size_ = arena;
    std::size_t bytes = arena * 16 + total_cells_ * std::size_t(k_) * 8 +
                        total_cells_ * 8 * 6;
    if (bytes > cfg_.dp_memory_cap_bytes)
      throw ResourceError(
          "dp_solve would need about " + std::to_string(bytes >> 20) +
              " MiB; increase eps or raise the memory cap",
          double(bytes));
  }

  std::size_t pair_index(int q, int qp) const {
    return std::size_t(q) * std::size_t(nq_) + std::size_t(qp);
  }

  void build_base() {
    base_m_.resize(std::size_t(nq_));
    base_l_.resize(std::size_t(nq_));
    parallel_for(nq_, cfg_.threads, [&](int q) {
      int cap = acap_[std::size_t(q)];
      if (cap < 0) return;
      auto& bm = base_m_[std::size_t(q)];
      auto& bl = base_l_[std::size_t(q)];
      bm.assign(std::size_t(cap) + 1, kNegInf);
      bl.assign(std::size_t(cap) + 1, kNaN);
      const double quality = grids_.qualities[std::size_t(q)];
      double lo_bracket = theta_lo_;
      for (int a = 0; a <= cap; ++a) {
        const double price = grids_.price(a);
        double theta;
        if (inst_.value(quality, theta_lo_) >= price) {
          theta = theta_lo_;
        } else {
          // lowest buyer moves up with the price: reuse the last cutoff
          // as the bracket floor
          theta = bisect_lowest(
              [&](double t) { return inst_.value(quality, t) - price; },
              lo_bracket, theta_hi_, cfg_);
          lo_bracket = theta;
        }
        bm[std::size_t(a)] = (price - inst_.c) * inst_.dist.survival(theta);
        bl[std::size_t(a)] = theta;
      }
    });
  }

  void build_pair_tables() {
    arena_theta_.resize(arena_size_);
    arena_t_.resize(arena_size_);
    parallel_for(nq_, cfg_.threads, [&](int q) {
      for (int qp = 0; qp < q; ++qp) {
        PairTable& pt = pairs_[pair_index(q, qp)];
        if (pt.dmax < 0) continue;
        const double quality = grids_.qualities[std::size_t(q)];
        const double quality_p = grids_.qualities[std::size_t(qp)];
        double* theta_tab = arena_theta_.data() + pt.offset;
        double* t_tab = arena_t_.data() + pt.offset;
        auto gap = [&](double t) {
          return inst_.value(quality, t) - inst_.value(quality_p, t);
        };
        double bracket = theta_lo_;
        for (int d = 0; d <= pt.dmax; ++d) {
          const double delta = d * step_;
          double theta;
          if (gap(bracket) >= delta) {
            theta = bracket;
          } else {
            theta = bisect_lowest([&](double t) { return gap(t) - delta; },
                                  bracket, theta_hi_, cfg_);
            bracket = theta;
          }
          theta_tab[d] = theta;
          double tv = delta * inst_.dist.survival(theta);
          t_tab[d] = tv;
          if (tv > pt.t_top) pt.t_top = tv;
        }
        // Concavity of T decides whether the envelope trick applies.
        pt.concave = true;
        for (int d = 1; d + 1 <= pt.dmax; ++d) {
          double dd = (t_tab[d + 1] - t_tab[d]) - (t_tab[d] - t_tab[d - 1]);
          if (dd > 1e-9 * (1.0 + std::abs(t_tab[d]))) {
            pt.concave = false;
            break;
          }
        }
      }
    });
  }

  bool pick_path() {
    if (cfg_.dp_path == Config::DpPath::kExhaustive) return true;
    if (cfg_.dp_path == Config::DpPath::kEnvelope) return false;
    // Work estimate for the quadratic scan: sum over pairs of the
    // candidate window area, times layers.
    double work = 0.0;
    for (int q = 1; q < nq_; ++q)
      for (int qp = 0; qp < q; ++qp) {
        const PairTable& pt = pairs_[pair_index(q, qp)];
        if (pt.dmax < 0) continue;
        work += double(acap_[std::size_t(qp)] + 1) * double(pt.dmax + 1);
      }
    work *= double(std::max(1, k_ - 1));
    return work <= cfg_.dp_exhaustive_budget;
  }

  void alloc_rows() {
    auto alloc = [&](std::vector<std::vector<double>>& rows, double fill) {
      rows.resize(std::size_t(nq_));
      for (int q = 0; q < nq_; ++q)
        rows[std::size_t(q)].assign(
            std::size_t(std::max(0, acap_[std::size_t(q)] + 1)), fill);
    };
    alloc(m_prev_, kNegInf);
    alloc(l_prev_, kNaN);
    m_cur_ = base_m_;
    l_cur_ = base_l_;

    choice_.assign(std::size_t(k_),
                   std::vector<std::uint64_t>(total_cells_, pack_choice(CellKind::kNone)));
    for (int q = 0; q < nq_; ++q)
      for (int a = 0; a <= acap_[std::size_t(q)]; ++a)
        if (base_m_[std::size_t(q)][std::size_t(a)] > kNegInf)
          choice_[0][cell_off_[std::size_t(q)] + std::size_t(a)] =
              pack_choice(CellKind::kSingle);

    export_full_ = total_cells_ * std::size_t(k_) <= cfg_.dp_table_export_cap;
    if (export_full_) {
      export_m_.assign(std::size_t(k_) * std::size_t(nq_) * std::size_t(np_), kNegInf);
      export_l_.assign(export_m_.size(), kNaN);
    }
  }

  void export_layer(int layer_zero_based) {
    if (!export_full_) return;
    std::size_t per_layer = std::size_t(nq_) * std::size_t(np_);
    for (int q = 0; q < nq_; ++q)
      for (int a = 0; a <= acap_[std::size_t(q)]; ++a) {
        std::size_t at = per_layer * std::size_t(layer_zero_based) +
                         std::size_t(q) * std::size_t(np_) + std::size_t(a);
        export_m_[at] = m_cur_[std::size_t(q)][std::size_t(a)];
        export_l_[at] = l_cur_[std::size_t(q)][std::size_t(a)];
      }
  }

  // First usable price offset for candidate (Q', b): the indifference
  // type must clear the sub-solution's lowest buyer.
  int activation(int q, int qp, int b) const {
    double lb = l_prev_[std::size_t(qp)][std::size_t(b)];
    double gap_at_lb =
        inst_.value(grids_.qualities[std::size_t(q)], lb + cfg_.tol_compare) -
        inst_.value(grids_.qualities[std::size_t(qp)], lb + cfg_.tol_compare);
    int t = int(std::floor(gap_at_lb / step_)) + 1;
    return std::max(t, 0);
  }

  void seed_row(int q, int layer) {
    auto& mv = m_cur_[std::size_t(q)];
    auto& lv = l_cur_[std::size_t(q)];
    std::uint64_t* ch = choice_[std::size_t(layer - 1)].data() + cell_off_[std::size_t(q)];
    for (int a = 0; a <= acap_[std::size_t(q)]; ++a) {
      mv[std::size_t(a)] = m_prev_[std::size_t(q)][std::size_t(a)];
      lv[std::size_t(a)] = l_prev_[std::size_t(q)][std::size_t(a)];
      ch[a] = mv[std::size_t(a)] > kNegInf ? pack_choice(CellKind::kStay)
                                           : pack_choice(CellKind::kNone);
    }
  }

  void fill_row_exhaustive(int q, int layer) {
    if (acap_[std::size_t(q)] < 0) return;
    seed_row(q, layer);
    auto& mv = m_cur_[std::size_t(q)];
    auto& lv = l_cur_[std::size_t(q)];
    std::uint64_t* ch = choice_[std::size_t(layer - 1)].data() + cell_off_[std::size_t(q)];
    const int cap = acap_[std::size_t(q)];
    for (int qp = 0; qp < q; ++qp) {
      const PairTable& pt = pairs_[pair_index(q, qp)];
      if (pt.dmax < 0) continue;
      const double* theta_tab = arena_theta_.data() + pt.offset;
      const double* t_tab = arena_t_.data() + pt.offset;
      const auto& prev = m_prev_[std::size_t(qp)];
      for (int b = 0; b <= acap_[std::size_t(qp)]; ++b) {
        const double base = prev[std::size_t(b)];
        if (base == kNegInf) continue;
        int d_lo = activation(q, qp, b);
        int d_hi = std::min(pt.dmax, cap - b);
        for (int d = d_lo; d <= d_hi; ++d) {
          double val = base + t_tab[d];
          int a = b + d;
          if (val > mv[std::size_t(a)]) {
            mv[std::size_t(a)] = val;
            lv[std::size_t(a)] = theta_tab[d];
            ch[a] = pack_choice(CellKind::kChain, qp, b);
          }
        }
      }
    }
  }

  // --- upper-envelope row fill (Li Chao tree on curves b -> A[b] + T[a-b]) ---

  void fill_row_envelope(int q, int layer) {
    if (acap_[std::size_t(q)] < 0) return;
    seed_row(q, layer);
    auto& mv = m_cur_[std::size_t(q)];
    auto& lv = l_cur_[std::size_t(q)];
    std::uint64_t* ch = choice_[std::size_t(layer - 1)].data() + cell_off_[std::size_t(q)];
    const int cap = acap_[std::size_t(q)];
    const int width = cap + 1;

    thread_local std::vector<int> node_curve;
    thread_local std::vector<std::uint32_t> node_stamp;
    thread_local std::uint32_t stamp_now = 0;
    std::size_t need = std::size_t(4) * std::size_t(width) + 4;
    if (node_curve.size() < need) {
      node_curve.assign(need, -1);
      node_stamp.assign(need, 0);
    }

    double row_floor = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= cap; ++a)
      row_floor = std::min(row_floor, mv[std::size_t(a)]);

    for (int qp = 0; qp < q; ++qp) {
      const PairTable& pt = pairs_[pair_index(q, qp)];
      if (pt.dmax < 0) continue;
      if (prev_row_max_[std::size_t(qp)] + pt.t_top <= row_floor) continue;
      if (!pt.concave) {
        fill_pair_quadratic(q, qp, layer);
        continue;
      }
      const double* theta_tab = arena_theta_.data() + pt.offset;
      const double* t_tab = arena_t_.data() + pt.offset;
      const auto& prev = m_prev_[std::size_t(qp)];

      ++stamp_now;
      auto curve_at = [&](int b, int a) {
        return prev[std::size_t(b)] + t_tab[a - b];
      };
      // Segment-restricted Li Chao insertion over [lo, hi].
      auto insert = [&](auto&& self, int node, int nl, int nr, int lo, int hi,
                        int b) -> void {
        if (hi < nl || nr < lo) return;
        if (node_stamp[std::size_t(node)] != stamp_now) {
          node_stamp[std::size_t(node)] = stamp_now;
          node_curve[std::size_t(node)] = -1;
        }
        int mid = (nl + nr) / 2;
        if (lo <= nl && nr <= hi) {
          int& cur = node_curve[std::size_t(node)];
          if (cur < 0) {
            cur = b;
            return;
          }
          bool mid_better = curve_at(b, mid) > curve_at(cur, mid);
          bool left_better = curve_at(b, nl) > curve_at(cur, nl);
          if (mid_better) std::swap(cur, b);
          if (nl == nr) return;
          if (left_better != mid_better)
            self(self, 2 * node, nl, mid, lo, hi, b);
          else
            self(self, 2 * node + 1, mid + 1, nr, lo, hi, b);
          return;
        }
        self(self, 2 * node, nl, mid, lo, hi, b);
        self(self, 2 * node + 1, mid + 1, nr, lo, hi, b);
      };

      for (int b = 0; b <= acap_[std::size_t(qp)]; ++b) {
        if (prev[std::size_t(b)] == kNegInf) continue;
        int d_lo = activation(q, qp, b);
        int d_hi = std::min(pt.dmax, cap - b);
        if (d_lo > d_hi) continue;
        insert(insert, 1, 0, cap, b + d_lo, b + d_hi, b);
      }

      for (int a = 0; a <= cap; ++a) {
        int node = 1, nl = 0, nr = cap;
        int best_b = -1;
        double best_v = kNegInf;
        while (true) {
          if (node_stamp[std::size_t(node)] == stamp_now) {
            int cb = node_curve[std::size_t(node)];
            if (cb >= 0) {
              double v = curve_at(cb, a);
              if (v > best_v) {
                best_v = v;
                best_b = cb;
              }
            }
          }
          if (nl == nr) break;
          int mid = (nl + nr) / 2;
          if (a <= mid) {
            node = 2 * node;
            nr = mid;
          } else {
            node = 2 * node + 1;
            nl = mid + 1;
          }
        }
        if (best_b >= 0 && best_v > mv[std::size_t(a)]) {
          mv[std::size_t(a)] = best_v;
          lv[std::size_t(a)] = theta_tab[a - best_b];
          ch[a] = pack_choice(CellKind::kChain, qp, best_b);
        }
      }
    }
  }

  void fill_pair_quadratic(int q, int qp, int layer) {
    auto& mv = m_cur_[std::size_t(q)];
    auto& lv = l_cur_[std::size_t(q)];
    std::uint64_t* ch = choice_[std::size_t(layer - 1)].data() + cell_off_[std::size_t(q)];
    const int cap = acap_[std::size_t(q)];
    const PairTable& pt = pairs_[pair_index(q, qp)];
    const double* theta_tab = arena_theta_.data() + pt.offset;
    const double* t_tab = arena_t_.data() + pt.offset;
    const auto& prev = m_prev_[std::size_t(qp)];
    ++fallback_pairs_;
    for (int b = 0; b <= acap_[std::size_t(qp)]; ++b) {
      const double base = prev[std::size_t(b)];
      if (base == kNegInf) continue;
      int d_lo = activation(q, qp, b);
      int d_hi = std::min(pt.dmax, cap - b);
      for (int d = d_lo; d <= d_hi; ++d) {
        double val = base + t_tab[d];
        int a = b + d;
        if (val > mv[std::size_t(a)]) {
          mv[std::size_t(a)] = val;
          lv[std::size_t(a)] = theta_tab[d];
          ch[a] = pack_choice(CellKind::kChain, qp, b);
        }
      }
    }
  }

  DpResult reconstruct() {
    DpResult res;
    // Best final cell; the empty menu (revenue 0) is the fallback.
    double best = 0.0;
    int best_q = -1, best_a = -1;
    for (int q = 0; q < nq_; ++q)
      for (int a = 0; a <= acap_[std::size_t(q)]; ++a)
        if (m_cur_[std::size_t(q)][std::size_t(a)] > best) {
          best = m_cur_[std::size_t(q)][std::size_t(a)];
          best_q = q;
          best_a = a;
        }

    std::vector<MenuItem> items;
    int q = best_q, a = best_a;
    for (int layer = k_; layer >= 1 && q >= 0; --layer) {
      std::uint64_t c = choice_[std::size_t(layer - 1)][cell_off_[std::size_t(q)] + std::size_t(a)];
      switch (choice_kind(c)) {
        case CellKind::kStay:
          continue;
        case CellKind::kSingle:
          items.push_back({grids_.qualities[std::size_t(q)], grids_.price(a)});
          q = -1;
          break;
        case CellKind::kChain: {
          items.push_back({grids_.qualities[std::size_t(q)], grids_.price(a)});
          int nq2 = choice_q(c);
          int nb = choice_b(c);
          q = nq2;
          a = nb;
          break;
        }
        case CellKind::kNone:
          throw InternalError("dp reconstruction hit an unreachable cell");
      }
    }
    res.menu = normalize_menu(items, inst_.q_max());
    res.diag.revenue_dp = best;

    res.tables.grids = grids_;
    res.tables.k = k_;
    res.tables.full = export_full_;
    if (export_full_) {
      res.tables.M = std::move(export_m_);
      res.tables.L = std::move(export_l_);
    } else {
      std::size_t per_layer = std::size_t(nq_) * std::size_t(np_);
      res.tables.M.assign(per_layer, kNegInf);
      res.tables.L.assign(per_layer, kNaN);
      for (int qq = 0; qq < nq_; ++qq)
        for (int aa = 0; aa <= acap_[std::size_t(qq)]; ++aa) {
          res.tables.M[std::size_t(qq) * std::size_t(np_) + std::size_t(aa)] =
              m_cur_[std::size_t(qq)][std::size_t(aa)];
          res.tables.L[std::size_t(qq) * std::size_t(np_) + std::size_t(aa)] =
              l_cur_[std::size_t(qq)][std::size_t(aa)];
        }
    }
    return res;
  }

  const PricingInstance& inst_;
  const Config& cfg_;
  double eps_;
  int k_ = 1;
  double step_ = 0.0;
  Grids grids_;
  int nq_ = 0, np_ = 0;
  double theta_lo_ = 0.0, theta_hi_ = 0.0;

  std::vector<int> acap_;
  std::vector<double> top_value_;
  std::vector<std::size_t> cell_off_;
  std::size_t total_cells_ = 0;
  std::size_t arena_size_ = 0;

  std::vector<PairTable> pairs_;
  std::vector<double> arena_theta_, arena_t_;
  std::vector<std::vector<double>> base_m_, base_l_;
  std::vector<std::vector<double>> m_prev_, m_cur_, l_prev_, l_cur_;
  std::vector<double> prev_row_max_;
  std::vector<std::vector<std::uint64_t>> choice_;

  bool export_full_ = false;
  std::vector<double> export_m_, export_l_;
  std::atomic<std::size_t> fallback_pairs_{0};
};

}  // namespace

DpResult dp_solve(const PricingInstance& inst, double eps, int k,
                  const Config& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must be in (0, 1)");
  if (k < 0) throw DomainError("k must be >= 0 (0 = unconstrained)");
  ContinuousSolver solver(inst, eps, k, cfg);
  DpResult res = solver.solve();
  res.diag.revenue_exact = segment_outcome(inst, res.menu, cfg).revenue;
  return res;
}

// ---------------------------------------------------------------------
// Discrete-type DP, exact against the brute-force oracle.
// ---------------------------------------------------------------------

DiscreteDpResult dp_solve_discrete(const DiscreteInstance& di, int k) {
  const int nq = di.n_qualities();
  const int np = di.n_prices();
  const int nt = di.n_types();
  if (k < 0) throw DomainError("k must be >= 0");
  if (k == 0) return DiscreteDpResult{};  // trivial menu only

  const std::size_t cells = std::size_t(nq) * std::size_t(np);
  auto idx = [&](int q, int p) { return std::size_t(q) * std::size_t(np) + std::size_t(p); };

  // First atom whose value difference clears the given level, by binary
  // search over the (non-decreasing) per-atom differences.
  auto first_at_least = [&](auto&& value_of, double level) {
    int lo = 0, hi = nt;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (value_of(mid) >= level)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;  // nt when no atom qualifies
  };

  std::vector<double> m_base(cells, kNegInf);
  std::vector<int> l_base(cells, nt);
  for (int q = 0; q < nq; ++q)
    for (int p = 0; p < np; ++p) {
      double price = di.prices[std::size_t(p)];
      int j = first_at_least([&](int t) { return di.v(q, t); }, price);
      if (j >= nt) continue;
      l_base[idx(q, p)] = j;
      m_base[idx(q, p)] = (price - di.c) * di.suffix_mass[std::size_t(j)];
    }

  std::vector<double> m_prev = m_base, m_cur = m_base;
  std::vector<int> l_prev = l_base, l_cur = l_base;
  // Backpointers: packed (layer, q', p') chain info per cell per layer.
  std::vector<std::vector<std::uint64_t>> choice(
      std::size_t(std::max(k, 1)),
      std::vector<std::uint64_t>(cells, pack_choice(CellKind::kNone)));
  for (std::size_t i = 0; i < cells; ++i)
    if (m_base[i] > kNegInf) choice[0][i] = pack_choice(CellKind::kSingle);

  for (int layer = 2; layer <= k; ++layer) {
    std::swap(m_prev, m_cur);
    std::swap(l_prev, l_cur);
    for (int q = 0; q < nq; ++q)
      for (int p = 0; p < np; ++p) {
        double best = m_prev[idx(q, p)];
        int best_l = l_prev[idx(q, p)];
        std::uint64_t best_ch = best > kNegInf ? pack_choice(CellKind::kStay)
                                                : pack_choice(CellKind::kNone);
        double price = di.prices[std::size_t(p)];
        for (int qp = 0; qp < q; ++qp)
          for (int pp = 0; pp < np; ++pp) {
            double prev = m_prev[idx(qp, pp)];
            if (prev == kNegInf) continue;
            double price_p = di.prices[std::size_t(pp)];
            int t = first_at_least(
                [&](int j) { return di.v(q, j) - di.v(qp, j); },
                price - price_p);
            if (t >= nt) continue;               // nobody prefers the new top
            if (l_prev[idx(qp, pp)] >= t) continue;  // strands the old top
            double val = prev + (price - price_p) * di.suffix_mass[std::size_t(t)];
            if (val > best) {
              best = val;
              best_l = t;
              best_ch = pack_choice(CellKind::kChain, qp, pp);
            }
          }
        m_cur[idx(q, p)] = best;
        l_cur[idx(q, p)] = best_l;
        choice[std::size_t(layer - 1)][idx(q, p)] = best_ch;
      }
  }

  DiscreteDpResult res;
  res.value = 0.0;
  int best_q = -1, best_p = -1;
  for (int q = 0; q < nq; ++q)
    for (int p = 0; p < np; ++p)
      if (m_cur[idx(q, p)] > res.value) {
        res.value = m_cur[idx(q, p)];
        best_q = q;
        best_p = p;
      }

  int q = best_q, p = best_p;
  for (int layer = k; layer >= 1 && q >= 0; --layer) {
    std::uint64_t c = choice[std::size_t(layer - 1)][idx(q, p)];
    switch (choice_kind(c)) {
      case CellKind::kStay:
        continue;
      case CellKind::kSingle:
        res.items.push_back({q, di.prices[std::size_t(p)]});
        q = -1;
        break;
      case CellKind::kChain:
        res.items.push_back({q, di.prices[std::size_t(p)]});
        {
          int nq2 = choice_q(c), np2 = choice_b(c);
          q = nq2;
          p = np2;
        }
        break;
      case CellKind::kNone:
        throw InternalError("discrete dp reconstruction hit a dead cell");
    }
  }
  std::reverse(res.items.begin(), res.items.end());
  std::vector<MenuItem> raw;
  for (const auto& it : res.items)
    raw.push_back({di.qualities[std::size_t(it.quality_index)], it.price});
  double q_max = di.qualities.empty() ? 1.0 : di.qualities.back();
  res.menu = normalize_menu(raw, q_max);
  return res;
}

// ---------------------------------------------------------------------
// Linear fast path.
// ---------------------------------------------------------------------

bool is_linear_family(const PricingInstance& inst, int n_grid, double tol) {
  const double t_hi = inst.dist.support_hi();
  if (!(t_hi > 0.0)) return false;
  const double slope = inst.value(inst.q_max(), t_hi) / (t_hi * inst.q_max());
  for (int i = 1; i <= n_grid; ++i) {
    double q = inst.q_max() * i / double(n_grid);
    for (int j = 0; j <= n_grid; ++j) {
      double theta = inst.dist.support_lo() +
                     (t_hi - inst.dist.support_lo()) * j / double(n_grid);
      double want = slope * theta * q;
      if (std::abs(inst.value(q, theta) - want) > tol * (1.0 + std::abs(want)))
        return false;
    }
  }
  return true;
}

SingleItemResult linear_single_item(const PricingInstance& inst,
                                    const Config& cfg) {
  if (!is_linear_family(inst))
    throw PreconditionError("linear_single_item requires a linear valuation");
  const double q = inst.q_max();
  const double p_max = inst.value(q, inst.dist.support_hi());

  auto revenue_at = [&](double p) {
    auto buyer = lowest_buyer(inst, {q, p}, cfg);
    if (!buyer) return 0.0;
    return (p - inst.c) * inst.dist.survival(*buyer);
  };

  const int n = 4096;
  double best_p = 0.0, best_v = 0.0;
  for (int i = 1; i <= n; ++i) {
    double p = p_max * i / double(n);
    double v = revenue_at(p);
    if (v > best_v) {
      best_v = v;
      best_p = p;
    }
  }
  if (best_v > 0.0) {
    // Golden-section refinement around the best grid cell.
    double lo = std::max(0.0, best_p - p_max / n);
    double hi = std::min(p_max, best_p + p_max / n);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = revenue_at(x1), f2 = revenue_at(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + gr * (hi - lo); f2 = revenue_at(x2);
      } else {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - gr * (hi - lo); f1 = revenue_at(x1);
      }
    }
    double p_mid = 0.5 * (lo + hi), v_mid = revenue_at(p_mid);
    if (v_mid > best_v) {
      best_v = v_mid;
      best_p = p_mid;
    }
    // On a revenue plateau report the top of it.
    if (revenue_at(p_max) >= best_v - 1e-12 * (1.0 + std::abs(best_v))) {
      best_p = p_max;
      best_v = revenue_at(p_max);
    }
  }

  SingleItemResult res;
  if (best_v <= 0.0) {
    res.menu = Menu{};
    res.revenue = 0.0;
    res.price = 0.0;
    return res;
  }
  res.menu = normalize_menu({{q, best_p}}, inst.q_max());
  res.price = best_p;
  res.revenue = best_v;
  return res;
}

}  // namespace certmenu
