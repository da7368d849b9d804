#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "certmenu/config.hpp"

namespace certmenu {

// Parsed command-line request.  run() executes it and writes a JSON (or
// CSV) report; exit codes: 0 ok, 1 validation failure, 2 resource cap,
// 3 internal consistency error.
struct RunConfig {
  std::string command;  // solve-revenue | solve-welfare | evaluate |
                        // simulate | oracle | validate | gap-demo
  std::string zoo;
  std::map<std::string, double> zoo_params;
  std::string instance_path;
  std::string menu_inline;  // JSON [[quality, price], ...]
  std::string menu_path;
  double eps = 0.05;
  int k = 0;  // 0 = unconstrained (revenue) / dense menu (welfare)
  std::string objective = "revenue";
  std::string out_path;       // empty = standard output
  std::string format = "json";
  std::uint64_t seed = 42;
  double tol_root = 1e-10;
  double tol_quad = 1e-8;
  int threads = 1;
  std::vector<double> H_list;  // gap-demo
  int n_grid = 200;            // dense welfare menu resolution
  int oracle_types = 32;
  int oracle_nq = 6;
  int oracle_np = 8;

  Config to_config() const {
    Config cfg;
    cfg.tol_root = tol_root;
    cfg.tol_quad = tol_quad;
    cfg.seed = seed;
    cfg.threads = threads;
    return cfg;
  }
};

int run(const RunConfig& rc, std::ostream& out, std::ostream& err);

}  // namespace certmenu
