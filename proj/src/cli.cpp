#include "rsell/cli.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "rsell/benchmarks.hpp"
#include "rsell/comparative.hpp"
#include "rsell/errors.hpp"
#include "rsell/game.hpp"
#include "rsell/oracle.hpp"

namespace rsell {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

PiecewiseDistribution tampered(const PiecewiseDistribution& d, double shift,
                               double target) {
  std::vector<PiecewiseDistribution::Atom> atoms;
  for (auto a : d.atoms()) {
    if (std::abs(a.loc - target) < 1e-9) a.loc = std::min(a.loc - shift, 1.0);
    atoms.push_back(a);
  }
  return PiecewiseDistribution(std::move(atoms), d.segments());
}

PiecewiseDistribution named_g(const RunConfig& cfg, double xi) {
  if (cfg.g_family == "point") return PiecewiseDistribution::point_mass(xi);
  if (cfg.g_family == "binary") return PiecewiseDistribution::bernoulli(xi);
  if (cfg.g_family == "uniform") {
    // Mean-xi uniform: symmetric around xi, clipped to [0,1].
    const double half = std::min({xi, 1.0 - xi});
    return PiecewiseDistribution::uniform(xi - half, xi + half);
  }
  throw Error("simulate: unknown G family " + cfg.g_family +
              " (use point, binary or uniform)");
}

}  // namespace

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  for (const auto& [key, val] : j.items()) {
    if (key == "command") cfg.command = val.get<std::string>();
    else if (key == "mu") cfg.mu = val.get<double>();
    else if (key == "xi") cfg.xi = val.get<double>();
    else if (key == "s") cfg.s = val.get<double>();
    else if (key == "var") cfg.var = val.get<std::string>();
    else if (key == "n") cfg.n = val.get<std::size_t>();
    else if (key == "grid-n") cfg.grid_n = val.get<std::size_t>();
    else if (key == "tol") cfg.tol = val.get<double>();
    else if (key == "saddle-tol") cfg.saddle_tol = val.get<double>();
    else if (key == "trials") cfg.trials = val.get<std::uint64_t>();
    else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
    else if (key == "out") cfg.out = val.get<std::string>();
    else if (key == "format") cfg.format = val.get<std::string>();
    else if (key == "certify") cfg.certify = val.get<bool>();
    else if (key == "g") cfg.g_family = val.get<std::string>();
    else if (key == "g-param1") cfg.g_param1 = val.get<double>();
    else if (key == "g-param2") cfg.g_param2 = val.get<double>();
    else if (key == "price") cfg.price = val.get<double>();
    else if (key == "n-mu") cfg.n_mu = val.get<std::size_t>();
    else if (key == "n-xi") cfg.n_xi = val.get<std::size_t>();
    else if (key == "n-s") cfg.n_s = val.get<std::size_t>();
    else throw Error("config: unknown key " + key);
  }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ModelParams p{};
  try {
    p = validate_params(cfg.mu, cfg.xi, cfg.s);
  } catch (const OutOfRange& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return 2;
  }
  const RobustSolution sol = robust_strategy(p);
  const RegionThresholds& th = sol.thres;

  double oracle_residual = 0.0;
  if (cfg.certify) {
    const OracleResult orc = nature_worst_case_oracle(
        sol.strategy.price, sol.strategy.posterior_dist, p, cfg.grid_n);
    oracle_residual =
        std::abs(sol.strategy.price * orc.demand - sol.guarantee);
  }

  if (cfg.format == "csv") {
    out << "mu,xi,s,kind,price,guarantee,region\n"
        << fmt(p.mu) << ',' << fmt(p.xi) << ',' << fmt(p.s) << ','
        << to_string(sol.strategy.kind) << ',' << fmt(sol.strategy.price) << ','
        << fmt(sol.guarantee) << ',' << to_string(sol.region) << "\n";
  } else {
    nlohmann::json j;
    j["mu"] = p.mu;
    j["xi"] = p.xi;
    j["s"] = p.s;
    j["kind"] = to_string(sol.strategy.kind);
    j["price"] = sol.strategy.price;
    j["guarantee"] = sol.guarantee;
    j["region"] = to_string(sol.region);
    j["posterior"] = nlohmann::json::parse(sol.strategy.posterior_dist.to_json());
    j["thresholds"] = {{"B1", th.B1},         {"B2", th.B2},
                       {"B3", th.B3},         {"mu_low", th.mu_low},
                       {"mu_high", th.mu_high}};
    if (th.mu_hat) j["thresholds"]["mu_hat"] = *th.mu_hat;
    if (th.mu_check) j["thresholds"]["mu_check"] = *th.mu_check;
    if (cfg.certify) j["oracle_residual"] = oracle_residual;
    out << j.dump(2) << "\n";
  }
  if (cfg.certify && oracle_residual > cfg.tol) {
    err << "oracle disagreement " << fmt(oracle_residual) << " exceeds tol "
        << fmt(cfg.tol) << "\n";
    return 3;
  }
  return 0;
}

int cmd_region_map(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 2) {
    err << "region-map: grid too small\n";
    return 2;
  }
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) {
    err << "region-map: mu must lie in (0,1)\n";
    return 2;
  }
  out << "xi,s,B1,B2,B3,region,policy_kind,price,guarantee\n";
  std::vector<std::string> rows(cfg.n * cfg.n);
  // Rows are independent; evaluate in chunks and emit in input order.
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = std::max<std::size_t>(1, cfg.n / 8);
  for (std::size_t i0 = 0; i0 < cfg.n; i0 += chunk) {
    jobs.push_back(std::async(std::launch::async, [&, i0] {
      for (std::size_t i = i0; i < std::min(i0 + chunk, cfg.n); ++i) {
        const double xi =
            (static_cast<double>(i) + 0.5) / static_cast<double>(cfg.n);
        for (std::size_t k = 0; k < cfg.n; ++k) {
          const double s = xi * (static_cast<double>(k) + 0.5) /
                           static_cast<double>(cfg.n);
          const ModelParams p{cfg.mu, xi, s};
          const RobustSolution sol = robust_strategy(p);
          std::ostringstream line;
          line << fmt(xi) << ',' << fmt(s) << ',' << fmt(sol.thres.B1) << ','
               << fmt(sol.thres.B2) << ',' << fmt(std::max(sol.thres.B3, 0.0))
               << ',' << to_string(sol.region) << ','
               << to_string(sol.strategy.kind) << ','
               << fmt(sol.strategy.price) << ',' << fmt(sol.guarantee);
          rows[i * cfg.n + k] = line.str();
        }
      }
    }));
  }
  for (auto& j : jobs) j.get();
  for (const auto& r : rows) out << r << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 2) {
    err << "sweep: grid too small\n";
    return 2;
  }
  if (cfg.var != "s" && cfg.var != "mu" && cfg.var != "xi") {
    err << "sweep: var must be s, mu or xi\n";
    return 2;
  }
  out << cfg.var << ",price,guarantee,kind\n";
  for (std::size_t i = 1; i <= cfg.n; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(cfg.n + 1);
    double mu = cfg.mu, xi = cfg.xi, s = cfg.s;
    if (cfg.var == "s") s = xi * frac;
    if (cfg.var == "mu") mu = frac;
    if (cfg.var == "xi") {
      xi = frac;
      if (s >= xi) continue;  // keep s < xi rows only
    }
    const RobustSolution sol = robust_strategy(validate_params(mu, xi, s));
    const double v = cfg.var == "s" ? s : (cfg.var == "mu" ? mu : xi);
    out << fmt(v) << ',' << fmt(sol.strategy.price) << ','
        << fmt(sol.guarantee) << ',' << to_string(sol.strategy.kind) << "\n";
  }
  if (cfg.var == "s") {
    const double s_hat = jump_threshold(cfg.mu, cfg.xi);
    const double eps = 1e-9 * cfg.xi;
    const double left =
        robust_strategy(validate_params(cfg.mu, cfg.xi, s_hat - eps))
            .strategy.price;
    const double right =
        robust_strategy(validate_params(cfg.mu, cfg.xi, s_hat + eps))
            .strategy.price;
    out << "s_hat=" << fmt(s_hat) << ",left=" << fmt(left)
        << ",right=" << fmt(right) << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  double max_saddle = 0.0, max_oracle = 0.0;
  std::vector<std::string> failures;
  for (std::size_t im = 0; im < cfg.n_mu; ++im) {
    const double mu = 0.1 + 0.8 * static_cast<double>(im) /
                                static_cast<double>(std::max<std::size_t>(cfg.n_mu - 1, 1));
    for (std::size_t ix = 0; ix < cfg.n_xi; ++ix) {
      const double xi = 0.15 + 0.7 * static_cast<double>(ix) /
                                   static_cast<double>(std::max<std::size_t>(cfg.n_xi - 1, 1));
      for (std::size_t is = 0; is < cfg.n_s; ++is) {
        const double s = xi * (static_cast<double>(is) /
                               static_cast<double>(cfg.n_s));
        ModelParams p{};
        try {
          p = validate_params(mu, xi, s);
        } catch (const OutOfRange&) {
          continue;
        }
        RobustSolution sol = robust_strategy(p);
        if (s == 0.0) {
          // Zero search cost must coincide with the dedicated benchmark.
          const RobustSolution z = zero_search_strategy(mu, xi);
          if (z.strategy.price != sol.strategy.price ||
              z.guarantee != sol.guarantee) {
            failures.push_back("s=0 mismatch at mu=" + fmt(mu) +
                               " xi=" + fmt(xi));
          }
        }
        PiecewiseDistribution h = sol.strategy.posterior_dist;
        if (cfg.tamper != 0.0) {
          h = tampered(h, cfg.tamper,
                       sol.strategy.price + p.effective_top());
        }
        const PiecewiseDistribution adv =
            saddle_adversary(sol.strategy.price, p);
        const SaddleReport rep =
            saddle_check(sol.strategy.price, h, adv, p, cfg.saddle_tol);
        max_saddle = std::max(
            {max_saddle, rep.nature_residual, rep.seller_residual});
        const OracleResult orc =
            nature_worst_case_oracle(sol.strategy.price, h, p, cfg.grid_n);
        const double gap =
            std::abs(sol.strategy.price * orc.demand - sol.guarantee);
        max_oracle = std::max(max_oracle, gap);
        if (!rep.pass || gap > cfg.tol) {
          failures.push_back("mu=" + fmt(mu) + " xi=" + fmt(xi) +
                             " s=" + fmt(s) + " saddle=" + rep.detail +
                             " oracle_gap=" + fmt(gap));
        }
      }
    }
  }
  out << "max_saddle_residual=" << fmt(max_saddle)
      << " max_oracle_gap=" << fmt(max_oracle) << "\n";
  if (!failures.empty()) {
    for (const auto& f : failures) err << "FAIL " << f << "\n";
    return 3;
  }
  out << "verify: all points within tolerance\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ModelParams p{};
  try {
    p = validate_params(cfg.mu, cfg.xi, cfg.s);
  } catch (const OutOfRange& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return 2;
  }
  const RobustSolution sol = robust_strategy(p);
  const double price = cfg.price >= 0.0 ? cfg.price : sol.strategy.price;
  const PiecewiseDistribution g = named_g(cfg, p.xi);
  const DemandRevenue analytic =
      demand_and_revenue(price, sol.strategy.posterior_dist, g, p.s);
  const SimulationResult sim = simulate_market(
      price, sol.strategy.posterior_dist, g, p.s, cfg.trials, cfg.seed);
  const double z = (sim.demand_estimate - analytic.demand) /
                   std::max(sim.stderr_estimate, 1e-12);
  nlohmann::json j;
  j["price"] = price;
  j["g_family"] = cfg.g_family;
  j["analytic_demand"] = analytic.demand;
  j["estimated_demand"] = sim.demand_estimate;
  j["stderr"] = sim.stderr_estimate;
  j["z_score"] = z;
  j["trials"] = sim.trials;
  out << j.dump(2) << "\n";
  return std::abs(z) <= 5.0 ? 0 : 3;
}

int cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SmoothDistribution g;
  try {
    g = make_smooth_family(cfg.g_family, cfg.g_param1, cfg.g_param2);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  const double s = cfg.s;
  if (!(s >= 0.0 && s < g.mean)) {
    err << "benchmark: requires 0 <= s < mean(G) = " << fmt(g.mean) << "\n";
    return 2;
  }
  const KnownDistPrice k = known_dist_price(g, s);
  const double s_hat = known_dist_threshold(g);
  nlohmann::json j;
  j["family"] = g.name;
  j["mean"] = g.mean;
  j["s"] = s;
  j["p_h"] = k.p_h;
  j["reservation_value"] = k.a;
  j["p_o"] = k.p_o;
  j["branch"] = k.deterrence ? "deterrence" : "search";
  j["profit_factor"] = k.profit_factor;
  j["s_hat_G"] = s_hat;
  const RobustSolution zero = zero_search_strategy(cfg.mu, cfg.xi);
  j["zero_search"] = {{"price", zero.strategy.price},
                      {"guarantee", zero.guarantee},
                      {"kind", to_string(zero.strategy.kind)}};
  out << j.dump(2) << "\n";
  return 0;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "cannot open output file " << cfg.out << "\n";
      return 2;
    }
    sink = &file;
  }
  if (cfg.command == "solve") return cmd_solve(cfg, *sink, err);
  if (cfg.command == "region-map") return cmd_region_map(cfg, *sink, err);
  if (cfg.command == "sweep") return cmd_sweep(cfg, *sink, err);
  if (cfg.command == "verify") return cmd_verify(cfg, *sink, err);
  if (cfg.command == "simulate") return cmd_simulate(cfg, *sink, err);
  if (cfg.command == "benchmark") return cmd_benchmark(cfg, *sink, err);
  err << "unknown command " << cfg.command << "\n";
  return 2;
}

}  // namespace rsell
