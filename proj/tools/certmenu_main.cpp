#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "certmenu/run.hpp"

namespace {

void add_common(CLI::App* cmd, certmenu::RunConfig& rc,
                std::vector<std::string>& params, bool h_is_list) {
  cmd->add_option("--zoo", rc.zoo, "named instance from the zoo");
  cmd->add_option("--instance", rc.instance_path, "instance spec JSON file");
  cmd->add_option("--param", params, "zoo parameter as key=value")
      ->expected(-1);
  if (!h_is_list)
    cmd->add_option("--H", rc.zoo_params["H"], "shorthand for --param H=...");
  cmd->add_option("--eps", rc.eps, "discretization parameter in (0,1)");
  cmd->add_option("--k", rc.k, "menu size cap (0 = unconstrained)");
  cmd->add_option("--objective", rc.objective, "revenue|welfare");
  cmd->add_option("--out", rc.out_path, "output path (default stdout)");
  cmd->add_option("--format", rc.format, "json|csv");
  cmd->add_option("--seed", rc.seed, "probe seed");
  cmd->add_option("--threads", rc.threads, "worker threads");
  cmd->add_option("--tol-root", rc.tol_root, "root-finding tolerance");
  cmd->add_option("--tol-quad", rc.tol_quad, "quadrature tolerance");
  cmd->add_option("--menu", rc.menu_inline, "menu as JSON [[q, p], ...]");
  cmd->add_option("--menu-file", rc.menu_path, "menu JSON file");
  cmd->add_option("--n-grid", rc.n_grid, "dense welfare menu resolution");
  cmd->add_option("--types", rc.oracle_types, "oracle type atoms");
  cmd->add_option("--oracle-nq", rc.oracle_nq, "oracle quality grid size");
  cmd->add_option("--oracle-np", rc.oracle_np, "oracle price grid size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification menu solver"};
  app.require_subcommand(1);

  certmenu::RunConfig rc;
  std::vector<std::string> params;
  std::string h_list;

  for (const char* name :
       {"solve-revenue", "solve-welfare", "evaluate", "simulate", "oracle",
        "validate", "gap-demo"}) {
    const bool is_gap = std::string(name) == "gap-demo";
    CLI::App* cmd = app.add_subcommand(name);
    add_common(cmd, rc, params, is_gap);
    if (is_gap)
      cmd->add_option("--H", h_list, "comma-separated H values");
  }

  if (const char* env = std::getenv("CERTMENU_THREADS"))
    rc.threads = std::max(1, std::atoi(env));

  CLI11_PARSE(app, argc, argv);
  rc.command = app.get_subcommands().front()->get_name();

  for (const std::string& kv : params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "bad --param (expected key=value): " << kv << "\n";
      return 1;
    }
    rc.zoo_params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  if (rc.zoo_params.count("H") && rc.zoo_params["H"] == 0.0)
    rc.zoo_params.erase("H");

  if (rc.command == "gap-demo") {
    std::string source = h_list;
    std::stringstream ss(source);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) rc.H_list.push_back(std::stod(tok));
    if (rc.H_list.empty() && rc.zoo_params.count("H"))
      rc.H_list.push_back(rc.zoo_params["H"]);
  }

  return certmenu::run(rc, std::cout, std::cerr);
}
