#include "certmenu/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "certmenu/dp.hpp"
#include "certmenu/errors.hpp"
#include "certmenu/instance.hpp"
#include "certmenu/market.hpp"
#include "certmenu/oracle.hpp"
#include "certmenu/reduction.hpp"
#include "certmenu/serialize.hpp"
#include "certmenu/validate.hpp"
#include "certmenu/welfare.hpp"

namespace certmenu {

namespace {

using nlohmann::json;

InstanceSpec load_spec(const RunConfig& rc) {
  if (!rc.zoo.empty()) return make_named_instance(rc.zoo, rc.zoo_params);
  if (!rc.instance_path.empty()) {
    std::ifstream in(rc.instance_path);
    if (!in) throw DomainError("cannot open instance file " + rc.instance_path);
    json j;
    in >> j;
    return InstanceSpec::from_json(j);
  }
  throw DomainError("no instance given; use --zoo or --instance");
}

Menu load_menu(const RunConfig& rc, double q_max) {
  if (!rc.menu_inline.empty())
    return menu_from_json(json::parse(rc.menu_inline), q_max);
  if (!rc.menu_path.empty()) {
    std::ifstream in(rc.menu_path);
    if (!in) throw DomainError("cannot open menu file " + rc.menu_path);
    json j;
    in >> j;
    return menu_from_json(j, q_max);
  }
  throw DomainError("no menu given; use --menu or --menu-file");
}

json tolerances_json(const Config& cfg) {
  return json{{"tol_compare", cfg.tol_compare},
              {"tol_quad", cfg.tol_quad},
              {"tol_root", cfg.tol_root}};
}

// The paper-style rich menu for the gap construction: every grid quality
// in [1, H] priced at half its level.
Menu half_price_menu(double H, double step, double q_max) {
  std::vector<MenuItem> items;
  for (double q = 1.0; q <= H + 1e-12; q += step) items.push_back({q, q / 2.0});
  return normalize_menu(std::move(items), q_max);
}

json run_solve_revenue(const RunConfig& rc, const Config& cfg,
                       const InstanceSpec& spec) {
  PricingInstance inst = spec.build_pricing(cfg);
  DpResult res = dp_solve(inst, rc.eps, rc.k, cfg);
  MarketOutcome out = segment_outcome(inst, res.menu, cfg);
  json r;
  r["menu"] = menu_to_json(res.menu);
  r["revenue"] = out.revenue;
  r["welfare"] = out.welfare;
  r["diagnostics"] = diagnostics_to_json(res.diag);
  r["outcome"] = outcome_to_json(out, res.menu);
  return r;
}

json run_solve_welfare(const RunConfig& rc, const Config& cfg,
                       const InstanceSpec& spec) {
  PricingInstance inst = spec.build_pricing(cfg);
  json r;
  if (rc.k >= 1) {
    WelfareDpResult res = welfare_dp(inst, rc.eps, rc.k, cfg);
    r["menu"] = menu_to_json(res.menu);
    r["welfare"] = res.welfare_exact;
    r["welfare_dp_value"] = res.welfare_dp_value;
    r["k"] = rc.k;
  } else {
    DenseWelfareResult res = welfare_optimal_dense(inst, rc.n_grid, cfg);
    r["menu_size"] = res.menu.size();
    r["welfare"] = res.welfare;
    r["n_grid"] = rc.n_grid;
  }
  r["first_best"] = first_best_welfare(inst, cfg);
  return r;
}

json run_evaluate(const RunConfig& rc, const Config& cfg,
                  const InstanceSpec& spec, std::string* csv) {
  PricingInstance inst = spec.build_pricing(cfg);
  Menu menu = load_menu(rc, inst.q_max());
  MarketOutcome out = segment_outcome(inst, menu, cfg);
  if (csv) *csv = outcome_to_csv(out, menu);
  json r = outcome_to_json(out, menu);
  r["menu"] = menu_to_json(menu);
  return r;
}

json run_simulate(const RunConfig& rc, const Config& cfg,
                  const InstanceSpec& spec, std::string* csv) {
  CertificationEconomy econ = spec.build_economy(cfg);
  Menu menu = load_menu(rc, econ.q_max());
  GameOutcome out = full_game_outcome(econ, menu, cfg);
  WalrasianReport rep = verify_walrasian(econ, menu, out, cfg.probe_count, cfg);
  if (!rep.pass()) throw EquilibriumError("equilibrium check failed: " + rep.detail);
  if (csv) *csv = game_to_csv(out, menu);
  json r = game_to_json(out, menu);
  r["walrasian"] = {{"demand_ok", rep.demand_ok},
                    {"balance_ok", rep.balance_ok},
                    {"producer_ok", rep.producer_ok},
                    {"n_probe", rep.n_probe}};
  return r;
}

json run_oracle(const RunConfig& rc, const Config& cfg,
                const InstanceSpec& spec) {
  PricingInstance inst = spec.build_pricing(cfg);
  std::vector<double> qs, ps;
  double p_max = inst.value(inst.q_max(), inst.dist.support_hi());
  for (int i = 1; i <= rc.oracle_nq; ++i)
    qs.push_back(inst.q_max() * double(i) / double(rc.oracle_nq));
  for (int i = 1; i <= rc.oracle_np; ++i)
    ps.push_back(p_max * double(i) / double(rc.oracle_np));
  DiscreteInstance di =
      discretize_types(inst, rc.oracle_types).with_grids(inst, qs, ps);
  Objective obj = rc.objective == "welfare" ? Objective::kWelfare
                                            : Objective::kRevenue;
  OracleResult res = brute_force_optimal(di, std::max(rc.k, 1), obj, cfg);
  json r;
  r["menu"] = menu_to_json(res.menu);
  r["value"] = res.value;
  r["candidates"] = res.candidates;
  r["types"] = rc.oracle_types;
  return r;
}

json run_validate(const RunConfig& rc, const Config& cfg,
                  const InstanceSpec& spec, bool* ok) {
  json r;
  if (spec.is_economy()) {
    CertificationEconomy econ = spec.build_economy(cfg);  // throws on failure
    EconomyReport rep = validate_economy(econ, 50, cfg);
    *ok = rep.pass();
    r["pass"] = rep.pass();
    r["consumer_single_crossing_violations"] = rep.consumer.single_crossing.size();
    r["producer_single_crossing_violations"] = rep.producer.single_crossing.size();
    r["f_bound_violations"] = rep.f_bound.size();
  } else {
    PricingInstance inst = spec.build_pricing(cfg);
    ValidationReport rep = validate_single_crossing(inst, 50, cfg);
    *ok = rep.pass();
    r["pass"] = rep.pass();
    r["single_crossing_violations"] = rep.single_crossing.size();
    r["weak_only_warnings"] = rep.strict_warnings.size();
    r["concavity_violations"] = rep.concavity.size();
    r["normalization_violations"] = rep.normalization.size();
  }
  (void)rc;
  return r;
}

json run_gap_demo(const RunConfig& rc, const Config& cfg, std::string* csv) {
  if (rc.H_list.empty())
    throw DomainError("gap-demo needs --H with a list of values");
  json rows = nlohmann::json::array();
  std::ostringstream os;
  os.precision(12);
  os << "H,single_item_revenue,rich_menu_revenue,first_best_welfare,"
        "revenue_optimal_welfare\n";
  for (double H : rc.H_list) {
    // Revenue side: one item can extract only O(1); the half-price ladder
    // grows like (1 + ln H) / 2.
    PricingInstance gap =
        make_named_instance("piecewise_gap", {{"H", H}}).build_pricing(cfg);
    DpResult single = dp_solve(gap, rc.eps, 1, cfg);
    Menu rich = half_price_menu(H, rc.eps, gap.q_max());
    double rich_rev = segment_outcome(gap, rich, cfg).revenue;

    // Welfare side: the revenue-optimal single posted price on the linear
    // equal-revenue instance wastes almost all gains from trade.
    PricingInstance lin =
        make_named_instance("linear_equal_revenue", {{"H", H}}).build_pricing(cfg);
    double first_best = first_best_welfare(lin, cfg);
    SingleItemResult opt = linear_single_item(lin, cfg);
    double opt_welfare = segment_outcome(lin, opt.menu, cfg).welfare;

    rows.push_back({{"H", H},
                    {"single_item_revenue", single.diag.revenue_exact},
                    {"rich_menu_revenue", rich_rev},
                    {"first_best_welfare", first_best},
                    {"revenue_optimal_welfare", opt_welfare}});
    os << H << ',' << single.diag.revenue_exact << ',' << rich_rev << ','
       << first_best << ',' << opt_welfare << '\n';
  }
  if (csv) *csv = os.str();
  return json{{"rows", rows}};
}

}  // namespace

int run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const Config cfg = rc.to_config();
  auto t0 = std::chrono::steady_clock::now();
  json report;
  report["schema"] = 1;
  report["command"] = rc.command;
  report["seed"] = rc.seed;
  report["tolerances"] = tolerances_json(cfg);

  std::string csv;
  bool ok = true;
  try {
    if (rc.command == "gap-demo") {
      report["input_digest"] = json_digest(json(rc.H_list));
      report["result"] = run_gap_demo(rc, cfg, &csv);
    } else {
      InstanceSpec spec = load_spec(rc);
      report["input_digest"] = json_digest(spec.to_json());
      if (rc.command == "solve-revenue")
        report["result"] = run_solve_revenue(rc, cfg, spec);
      else if (rc.command == "solve-welfare")
        report["result"] = run_solve_welfare(rc, cfg, spec);
      else if (rc.command == "evaluate")
        report["result"] = run_evaluate(rc, cfg, spec, &csv);
      else if (rc.command == "simulate")
        report["result"] = run_simulate(rc, cfg, spec, &csv);
      else if (rc.command == "oracle")
        report["result"] = run_oracle(rc, cfg, spec);
      else if (rc.command == "validate")
        report["result"] = run_validate(rc, cfg, spec, &ok);
      else
        throw DomainError("unknown command: " + rc.command);
    }
  } catch (const ResourceError& e) {
    err << json{{"error", {{"type", "resource"}, {"message", e.what()},
                           {"required", e.required}}}}.dump() << '\n';
    return 2;
  } catch (const InternalError& e) {
    err << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}.dump()
        << '\n';
    return 3;
  } catch (const NumericError& e) {
    err << json{{"error", {{"type", "numeric"}, {"message", e.what()},
                           {"best_estimate", e.best_estimate}}}}.dump() << '\n';
    return 3;
  } catch (const EquilibriumError& e) {
    err << json{{"error", {{"type", "equilibrium"}, {"message", e.what()}}}}.dump()
        << '\n';
    return 3;
  } catch (const Error& e) {
    err << json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump()
        << '\n';
    return 1;
  }

  auto t1 = std::chrono::steady_clock::now();
  report["wall_ms"] =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  std::string payload =
      rc.format == "csv" && !csv.empty() ? csv : report.dump(2) + "\n";
  if (rc.out_path.empty()) {
    out << payload;
  } else {
    std::ofstream f(rc.out_path);
    if (!f) throw DomainError("cannot write " + rc.out_path);
    f << payload;
  }
  return ok ? 0 : 1;
}

}  // namespace certmenu
