#include <CLI11.hpp>
#include <cstring>
#include <iostream>
#include <string>

#include "rsell/cli.hpp"
#include "rsell/errors.hpp"

int main(int argc, char** argv) {
  rsell::RunConfig cfg;

  // The config file supplies defaults and flags override, so it must be
  // loaded before CLI11 binds the remaining arguments.
  try {
    for (int i = 1; i < argc; ++i) {
      if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
        rsell::load_config_file(argv[i + 1], cfg);
      } else if (std::strncmp(argv[i], "--config=", 9) == 0) {
        rsell::load_config_file(argv[i] + 9, cfg);
      }
    }
  } catch (const rsell::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Robustly optimal selling strategies: price and information "
               "provision against an unknown outside-option distribution"};
  app.require_subcommand(1);
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags override)");
    sub->add_option("--mu", cfg.mu, "prior mean match value");
    sub->add_option("--xi", cfg.xi, "mean of the outside-option distribution");
    sub->add_option("--s", cfg.s, "search cost");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--grid-n", cfg.grid_n, "oracle grid size");
    sub->add_option("--tol", cfg.tol, "oracle tolerance");
  };

  CLI::App* solve = app.add_subcommand("solve", "robust strategy for one (mu,xi,s)");
  add_common(solve);
  solve->add_flag("--certify", cfg.certify, "cross-check with the oracle");

  CLI::App* region = app.add_subcommand("region-map", "policy regions over (xi,s)");
  add_common(region);
  region->add_option("--n", cfg.n, "grid points per axis");

  CLI::App* sweep = app.add_subcommand("sweep", "price/guarantee curves");
  add_common(sweep);
  sweep->add_option("--var", cfg.var, "sweep variable: s, mu or xi");
  sweep->add_option("--n", cfg.n, "sweep points");

  CLI::App* verify = app.add_subcommand("verify", "saddle + oracle certification");
  add_common(verify);
  verify->add_option("--n-mu", cfg.n_mu, "mu grid points");
  verify->add_option("--n-xi", cfg.n_xi, "xi grid points");
  verify->add_option("--n-s", cfg.n_s, "s grid points");
  verify->add_option("--saddle-tol", cfg.saddle_tol, "saddle residual tolerance");
  verify->add_option("--tamper", cfg.tamper,
                     "shift the deterrence atom (verifier self-test)");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo demand check");
  add_common(simulate);
  simulate->add_option("--trials", cfg.trials, "number of trials");
  simulate->add_option("--price", cfg.price, "override price (default robust)");
  simulate->add_option("--g", cfg.g_family, "G family: point, binary, uniform");

  CLI::App* bench = app.add_subcommand("benchmark", "known-distribution benchmark");
  add_common(bench);
  bench->add_option("--g", cfg.g_family,
                    "family: uniform, texp, triangular, beta");
  bench->add_option("--g-param1", cfg.g_param1, "family parameter 1");
  bench->add_option("--g-param2", cfg.g_param2, "family parameter 2");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    return rsell::run_command(cfg, std::cout, std::cerr);
  } catch (const rsell::OutOfRange& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const rsell::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
