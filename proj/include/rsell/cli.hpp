#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace rsell {

/// Flat run configuration mirroring the command-line flags. A JSON config
/// file provides defaults; explicit flags override.
struct RunConfig {
  std::string command;
  double mu = 0.6;
  double xi = 0.5;
  double s = 0.2;
  std::string var = "s";       // sweep variable: s, mu or xi
  std::size_t n = 200;         // sweep/region grid points per axis
  std::size_t grid_n = 400;    // oracle grid size
  double tol = 5e-3;           // oracle agreement tolerance
  double saddle_tol = 1e-8;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 12345;
  std::string out;             // output path; empty = stdout
  std::string format = "json"; // json or csv (solve only)
  bool certify = false;        // solve: run the oracle cross-check
  std::string g_family = "uniform";
  double g_param1 = 0.0;
  double g_param2 = 0.0;
  double price = -1.0;         // simulate: override price (< 0 = robust price)
  double tamper = 0.0;         // verify: shift the deterrence atom (testing)
  std::size_t n_mu = 5, n_xi = 5, n_s = 5;  // verify grid
};

/// Loads defaults from a flat key-value JSON file into cfg (unknown keys are
/// an error). Values later overridden by flags.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Exit codes: 0 ok, 2 invalid input, 3 verification failure.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_region_map(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatch on cfg.command, honoring cfg.out redirection.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace rsell
