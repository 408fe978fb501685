#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stqm::cli {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flat `key = value` scenario configuration; `#` starts a comment.
// Unknown keys are rejected. Defaults reproduce the reference scenarios.
struct ScenarioConfig {
  std::string scenario = "arrival";  // arrival | stationary | bayes-demo

  double hbar = 1.0;
  double mass = 1.0;

  // Momentum spectrum
  double p0 = 5.0;
  double sigma = 0.25;
  std::string branch = "plus";  // plus | minus | both
  double p_start = 0.01;
  double p_stop = 10.0;
  long p_count = 4096;

  // Time axis
  double t_start = 0.0;
  double t_stop = 16.0;
  long t_count = 4001;

  // Position axis (bayes-demo)
  double x_start = -6.0;
  double x_stop = 6.0;
  long x_count = 121;

  // Energy axis (stationary)
  double eps_start = -9.0;
  double eps_stop = 11.0;
  long eps_count = 8001;

  // Arrival evaluation positions
  std::vector<double> x_eval = {10.0, 20.0, 40.0};

  // Stationary / bayes model parameters
  double e_n = 1.0;
  double lambda = 1.0;
  double gamma = 0.0;

  long n_events = 100000;
  unsigned long long seed = 20240917ULL;
  std::string out;  // empty -> scenario default

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace stqm::cli
