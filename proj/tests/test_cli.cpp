#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rsell/cli.hpp"
#include "rsell/closed_form.hpp"

using namespace rsell;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(RunConfig cfg) {
  std::ostringstream out, err;
  const int code = run_command(cfg, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve emits the robust strategy as json") {
  RunConfig cfg;
  cfg.command = "solve";
  cfg.mu = 0.6;
  cfg.xi = 0.5;
  cfg.s = 0.2;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("kind") == "Full");
  CHECK(j.at("price").get<double>() == doctest::Approx(0.4));
  CHECK(j.at("guarantee").get<double>() == doctest::Approx(0.24));
  CHECK(j.at("thresholds").at("B1").get<double>() == doctest::Approx(0.1));
  // The serialized posterior parses back into the same distribution.
  const auto dist =
      PiecewiseDistribution::from_json(j.at("posterior").dump());
  CHECK(dist.mean() == doctest::Approx(0.6));
}

TEST_CASE("solve reports the mixture point with cutoffs") {
  RunConfig cfg;
  cfg.command = "solve";
  cfg.mu = 0.95;
  cfg.xi = 0.3;
  cfg.s = 0.1;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("kind") == "Mixture");
  CHECK(j.at("price").get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(j.at("guarantee").get<double>() ==
        doctest::Approx(0.3183333333).epsilon(1e-6));
  CHECK(j.at("thresholds").at("mu_check").get<double>() ==
        doctest::Approx(0.9074649189).epsilon(1e-6));
}

TEST_CASE("solve rejects invalid parameters with exit 2") {
  RunConfig cfg;
  cfg.command = "solve";
  cfg.mu = 0.6;
  cfg.xi = 0.5;
  cfg.s = 0.5;
  const Run r = run(cfg);
  CHECK(r.code == 2);
  CHECK(r.err.find("s < xi") != std::string::npos);
}

TEST_CASE("solve with certification exits 0 and reports the residual") {
  RunConfig cfg;
  cfg.command = "solve";
  cfg.mu = 0.6;
  cfg.xi = 0.5;
  cfg.s = 0.05;
  cfg.certify = true;
  cfg.grid_n = 150;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("oracle_residual").get<double>() < 5e-3);
}

TEST_CASE("region map rows are consistent with the case split") {
  RunConfig cfg;
  cfg.command = "region-map";
  cfg.mu = 0.6;
  cfg.n = 12;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "xi,s,B1,B2,B3,region,policy_kind,price,guarantee");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ls, tok, ',')) cols.push_back(tok);
    REQUIRE(cols.size() == 9);
    const double s = std::stod(cols[1]);
    const double b1 = std::stod(cols[2]);
    const double b2 = std::stod(cols[3]);
    const std::string region = cols[5];
    const std::string kind = cols[6];
    if (s >= b1) CHECK(region == "FullInfoAll");
    if (s < b2) CHECK(region == "UniformAll");
    if (region == "FullInfoAll") CHECK(kind == "Full");
    if (region == "UniformAll") CHECK(kind == "Uniform");
    CHECK(std::stod(cols[4]) >= 0.0);  // B3 clamped at zero
  }
  CHECK(rows == 144);
}

TEST_CASE("threshold curves are hump-shaped in xi") {
  // Each boundary attains an interior maximum.
  for (auto f : {threshold_b1, threshold_b2}) {
    double best = -1.0, best_xi = 0.0;
    for (int i = 1; i < 200; ++i) {
      const double xi = i / 200.0;
      if (f(xi) > best) {
        best = f(xi);
        best_xi = xi;
      }
    }
    CHECK(best_xi > 0.01);
    CHECK(best_xi < 0.99);
    CHECK(f(0.005) < best);
    CHECK(f(0.995) < best);
  }
}

TEST_CASE("s-sweep reports the jump pair") {
  RunConfig cfg;
  cfg.command = "sweep";
  cfg.var = "s";
  cfg.mu = 0.6;
  cfg.xi = 0.5;
  cfg.n = 24;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  const auto pos = r.out.find("s_hat=");
  REQUIRE(pos != std::string::npos);
  double s_hat = 0.0, left = 0.0, right = 0.0;
  REQUIRE(std::sscanf(r.out.c_str() + pos, "s_hat=%lf,left=%lf,right=%lf",
                      &s_hat, &left, &right) == 3);
  CHECK(s_hat == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(left == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(right == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("mu-sweep switches from uniform to mixture at the cutoff") {
  RunConfig cfg;
  cfg.command = "sweep";
  cfg.var = "mu";
  cfg.xi = 0.3;
  cfg.s = 0.1;
  cfg.n = 40;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  bool seen_mixture = false;
  double prev_guar = -1.0;
  while (std::getline(in, line)) {
    if (line.rfind("s_hat", 0) == 0) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ls, tok, ',')) cols.push_back(tok);
    REQUIRE(cols.size() == 4);
    const double mu = std::stod(cols[0]);
    if (cols[3] == "Mixture") {
      if (!seen_mixture) CHECK(mu == doctest::Approx(0.9074649).epsilon(0.03));
      seen_mixture = true;
    } else {
      CHECK_FALSE(seen_mixture);  // mixture region is an upper interval
    }
    CHECK(std::stod(cols[2]) >= prev_guar - 1e-12);  // guarantee rises in mu
    prev_guar = std::stod(cols[2]);
  }
  CHECK(seen_mixture);
}

TEST_CASE("sweep guarantee is strictly increasing in s") {
  RunConfig cfg;
  cfg.command = "sweep";
  cfg.var = "s";
  cfg.mu = 0.7;
  cfg.xi = 0.45;
  cfg.n = 32;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  double prev = -1.0;
  while (std::getline(in, line)) {
    if (line.rfind("s_hat", 0) == 0) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ls, tok, ',')) cols.push_back(tok);
    const double guar = std::stod(cols[2]);
    CHECK(guar > prev);
    prev = guar;
  }
}

TEST_CASE("verify exits 0 on a small healthy grid and 3 when tampered") {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.n_mu = 2;
  cfg.n_xi = 2;
  cfg.n_s = 3;
  cfg.grid_n = 100;
  const Run ok = run(cfg);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("all points within tolerance") != std::string::npos);

  cfg.tamper = 0.01;
  const Run bad = run(cfg);
  CHECK(bad.code == 3);
  CHECK(bad.err.find("FAIL") != std::string::npos);
}

TEST_CASE("simulate agrees with the analytic demand") {
  RunConfig cfg;
  cfg.command = "simulate";
  cfg.mu = 0.6;
  cfg.xi = 0.5;
  cfg.s = 0.2;
  cfg.g_family = "binary";
  cfg.trials = 100000;
  cfg.seed = 7;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("analytic_demand").get<double>() == doctest::Approx(0.6));
  CHECK(std::abs(j.at("z_score").get<double>()) < 4.0);

  // Deterministic given the seed.
  const Run again = run(cfg);
  CHECK(again.out == r.out);
}

TEST_CASE("benchmark command reproduces the uniform-family numbers") {
  RunConfig cfg;
  cfg.command = "benchmark";
  cfg.g_family = "uniform";
  cfg.s = 0.02;
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("p_h").get<double>() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(j.at("s_hat_G").get<double>() == doctest::Approx(0.03125).epsilon(1e-6));
  CHECK(j.at("branch") == "search");
  CHECK(j.at("zero_search").at("kind") == "Uniform");
}

TEST_CASE("config file supplies defaults") {
  const std::string path = "test_cli_config.json";
  {
    std::ofstream f(path);
    f << R"({"mu": 0.95, "xi": 0.3, "s": 0.1, "format": "csv"})";
  }
  RunConfig cfg;
  load_config_file(path, cfg);
  CHECK(cfg.mu == doctest::Approx(0.95));
  CHECK(cfg.format == "csv");
  cfg.command = "solve";
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("Mixture") != std::string::npos);
  std::remove(path.c_str());

  RunConfig fresh;
  CHECK_THROWS(load_config_file("does_not_exist.json", fresh));
}

TEST_CASE("output redirection writes the file") {
  RunConfig cfg;
  cfg.command = "solve";
  cfg.mu = 0.6;
  cfg.xi = 0.5;
  cfg.s = 0.2;
  cfg.out = "test_cli_out.json";
  const Run r = run(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(cfg.out);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(j.at("kind") == "Full");
  in.close();
  std::remove(cfg.out.c_str());
}
