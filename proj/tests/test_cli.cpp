// Configuration parsing, CSV emission, scenario runners, exit codes and
// the verification-suite mutation hook.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "stqm/cli/config.hpp"
#include "stqm/cli/csv.hpp"
#include "stqm/cli/scenarios.hpp"
#include "stqm/cli/verify.hpp"
#include "stqm/errors.hpp"

using namespace stqm::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

ScenarioConfig small_arrival_config() {
  ScenarioConfig cfg;
  cfg.scenario = "arrival";
  cfg.p_count = 1024;
  cfg.t_stop = 8.0;
  cfg.t_count = 201;
  cfg.x_eval = {10.0};
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(STQM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("format_number: shortest round-trip representation") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-3.25) == "-3.25");
  for (double v : {1.0 / 3.0, 6.02e23, -1e-300, 0.30000000000000004}) {
    const std::string s = format_number(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_number(static_cast<long long>(42)) == "42");
}

TEST_CASE("config: defaults, round-trip and rejection") {
  std::istringstream empty("");
  const ScenarioConfig defaults = parse_config(empty);
  CHECK(defaults == ScenarioConfig{});

  std::istringstream text(
      "# reference arrival run\n"
      "scenario = arrival\n"
      "p0 = 4.5\n"
      "sigma = 0.3   # momentum width\n"
      "x_eval = 5, 10, 20\n"
      "seed = 99\n"
      "out = somewhere.csv\n");
  const ScenarioConfig parsed = parse_config(text);
  CHECK(parsed.p0 == 4.5);
  CHECK(parsed.sigma == 0.3);
  CHECK(parsed.x_eval == std::vector<double>{5.0, 10.0, 20.0});
  CHECK(parsed.seed == 99);
  CHECK(parsed.out == "somewhere.csv");

  std::istringstream again(serialize_config(parsed));
  CHECK(parse_config(again) == parsed);

  std::istringstream unknown("scneario = arrival\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream badnum("p0 = five\n");
  CHECK_THROWS_AS(parse_config(badnum), ConfigError);
  std::istringstream badline("p0\n");
  CHECK_THROWS_AS(parse_config(badline), ConfigError);
}

TEST_CASE("run_arrival: CSV schema, normalization report, determinism") {
  const ScenarioConfig cfg = small_arrival_config();
  const std::string out1 = tmp_path("arrival1.csv");
  const std::string out2 = tmp_path("arrival2.csv");

  std::ostringstream info1, info2;
  run_arrival(cfg, out1, info1);
  run_arrival(cfg, out2, info2);

  const std::string body1 = slurp(out1);
  const std::string body2 = slurp(out2);
  CHECK(body1 == body2);  // bit-identical across runs
  CHECK(body1.rfind("t,x,rho,phi_plus_re,phi_plus_im,phi_minus_re,phi_minus_im\n", 0) == 0);
  CHECK(body1.find("\r") == std::string::npos);

  // one row per (t, x) pair plus header
  const auto rows = std::count(body1.begin(), body1.end(), '\n');
  CHECK(rows == 201 + 1);

  CHECK(info1.str().find("int_rho_dt=") != std::string::npos);
  const double norm = std::strtod(
      info1.str().substr(info1.str().find("int_rho_dt=") + 11).c_str(), nullptr);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-3));

  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("run_arrival: config validation") {
  ScenarioConfig cfg = small_arrival_config();
  cfg.x_eval.clear();
  std::ostringstream sink;
  CHECK_THROWS_AS(run_arrival(cfg, tmp_path("never.csv"), sink), ConfigError);

  ScenarioConfig bad_grid = small_arrival_config();
  bad_grid.t_count = 1;
  CHECK_THROWS_AS(run_arrival(bad_grid, tmp_path("never.csv"), sink), ConfigError);

  ScenarioConfig bad_branch = small_arrival_config();
  bad_branch.branch = "sideways";
  CHECK_THROWS_AS(run_arrival(bad_branch, tmp_path("never.csv"), sink), ConfigError);
}

TEST_CASE("run_arrival: numerical guard surfaces as GuardError") {
  ScenarioConfig cfg = small_arrival_config();
  cfg.p_count = 48;  // cannot resolve the phase at x = 40
  cfg.x_eval = {40.0};
  std::ostringstream sink;
  CHECK_THROWS_AS(run_arrival(cfg, tmp_path("never.csv"), sink), stqm::GuardError);
}

TEST_CASE("run_stationary: summary values and Gamma = 0 degeneracy") {
  ScenarioConfig cfg;
  cfg.scenario = "stationary";
  cfg.lambda = 1.0;
  cfg.gamma = 0.0;
  cfg.eps_count = 801;
  const std::string out = tmp_path("stationary.csv");
  std::ostringstream info;
  run_stationary(cfg, out, info);

  // summary line: T_mean,T_std,fwhm,fwhm_convolved,uncertainty_product
  std::istringstream lines(info.str());
  std::string header, values;
  std::getline(lines, header);
  std::getline(lines, values);
  CHECK(header == "T_mean,T_std,fwhm,fwhm_convolved,uncertainty_product");
  CHECK(values == "1,1,1,1,1");

  // Gamma = 0: the two sampled columns coincide
  std::istringstream csv(slurp(out));
  std::string line;
  std::getline(csv, line);  // header
  while (std::getline(csv, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double chi = std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
    const double conv = std::strtod(line.substr(c2 + 1).c_str(), nullptr);
    CHECK(std::abs(chi - conv) <= 1e-9 * std::abs(chi));
  }
  std::remove(out.c_str());

  cfg.gamma = 2.0;
  std::ostringstream info2;
  run_stationary(cfg, out, info2);
  std::getline(std::istringstream(info2.str()), header);  // discard header
  std::istringstream lines2(info2.str());
  std::getline(lines2, header);
  std::getline(lines2, values);
  CHECK(values == "1,1,1,3,1");  // fwhm_convolved = lambda + gamma
  std::remove(out.c_str());
}

TEST_CASE("run_bayes_demo: determinism, KS report and reconstruction column") {
  ScenarioConfig cfg;
  cfg.scenario = "bayes-demo";
  cfg.x_count = 61;
  cfg.t_stop = 20.0;
  cfg.t_count = 201;
  cfg.n_events = 20000;
  cfg.seed = 31415;

  const std::string dens = tmp_path("bayes.csv");
  const std::string ev1 = tmp_path("events1.csv");
  const std::string ev2 = tmp_path("events2.csv");
  std::ostringstream info1, info2;
  run_bayes_demo(cfg, dens, ev1, info1);
  run_bayes_demo(cfg, dens, ev2, info2);
  CHECK(slurp(ev1) == slurp(ev2));  // byte-identical seeded event logs

  std::istringstream head(slurp(dens));
  std::string first;
  std::getline(head, first);
  CHECK(first == "x,t,p_joint,f_marginal,g_marginal,f_reconstructed");
  std::string events_head;
  std::istringstream eh(slurp(ev1));
  std::getline(eh, events_head);
  CHECK(events_head == "event_index,x,t");

  const std::string report = info1.str();
  const double ks_t = std::strtod(report.substr(report.find("ks_t=") + 5).c_str(), nullptr);
  const double ks_x = std::strtod(report.substr(report.find("ks_x=") + 5).c_str(), nullptr);
  const double rec = std::strtod(
      report.substr(report.find("f_reconstruct_max_abs_diff=") + 27).c_str(), nullptr);
  CHECK(ks_t < 0.02);
  CHECK(ks_x < 0.02);
  CHECK(rec < 1e-3);
  CHECK(report.find("events_outside=0") != std::string::npos);

  std::remove(dens.c_str());
  std::remove(ev1.c_str());
  std::remove(ev2.c_str());
}

TEST_CASE("events_path_for: derives a sibling path") {
  CHECK(events_path_for("demo.csv") == "demo_events.csv");
  CHECK(events_path_for("out/demo.csv") == "out/demo_events.csv");
  CHECK(events_path_for("plain") == "plain_events");
}

TEST_CASE("cli binary: exit codes for config and guard failures") {
  // empty x list -> config error (2)
  const std::string cfg_path = tmp_path("empty_x.cfg");
  {
    std::ofstream out(cfg_path);
    out << "x_eval =\n"
        << "t_count = 101\n"
        << "p_count = 512\n";
  }
  CHECK(run_cli("arrival --config " + cfg_path + " --out " + tmp_path("never.csv")) == 2);

  // unresolvable phase -> numerical guard (3)
  const std::string guard_path = tmp_path("coarse_p.cfg");
  {
    std::ofstream out(guard_path);
    out << "p_count = 48\n"
        << "t_count = 101\n"
        << "x_eval = 40\n";
  }
  CHECK(run_cli("arrival --config " + guard_path + " --out " + tmp_path("never.csv")) == 3);

  // unknown key -> config error (2)
  const std::string bad_key = tmp_path("bad_key.cfg");
  {
    std::ofstream out(bad_key);
    out << "not_a_key = 1\n";
  }
  CHECK(run_cli("arrival --config " + bad_key + " --out " + tmp_path("never.csv")) == 2);

  // healthy run -> 0
  const std::string ok_path = tmp_path("ok.cfg");
  {
    std::ofstream out(ok_path);
    out << "p_count = 1024\nt_stop = 8\nt_count = 101\nx_eval = 10\n";
  }
  const std::string out_csv = tmp_path("cli_out.csv");
  CHECK(run_cli("arrival --config " + ok_path + " --out " + out_csv) == 0);

  std::remove(cfg_path.c_str());
  std::remove(guard_path.c_str());
  std::remove(bad_key.c_str());
  std::remove(ok_path.c_str());
  std::remove(out_csv.c_str());
}

TEST_CASE("verify: flipped half-derivative branch fails the dispersion check") {
  VerifyOptions mutated;
  mutated.half_derivative_branch = stqm::SqrtBranch::Conjugate;
  const auto results = run_verify(mutated);
  bool dispersion_failed = false;
  for (const CriterionResult& r : results)
    if (r.id == 2) dispersion_failed = !r.pass;
  CHECK(dispersion_failed);
}
