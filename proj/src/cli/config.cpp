#include "stqm/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "stqm/cli/csv.hpp"

namespace stqm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ConfigError("config: invalid number for '" + key + "': " + value);
  return out;
}

long parse_long(const std::string& key, const std::string& value) {
  long out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ConfigError("config: invalid integer for '" + key + "': " + value);
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config: empty entry in list '" + key + "'");
    out.push_back(parse_double(key, item));
  }
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  auto str = [](std::string ScenarioConfig::* field) {
    return Setter([field](ScenarioConfig& c, const std::string&, const std::string& v) {
      c.*field = v;
    });
  };
  auto num = [](double ScenarioConfig::* field) {
    return Setter([field](ScenarioConfig& c, const std::string& k, const std::string& v) {
      c.*field = parse_double(k, v);
    });
  };
  auto integer = [](long ScenarioConfig::* field) {
    return Setter([field](ScenarioConfig& c, const std::string& k, const std::string& v) {
      c.*field = parse_long(k, v);
    });
  };
  static const std::map<std::string, Setter> table = {
      {"scenario", str(&ScenarioConfig::scenario)},
      {"hbar", num(&ScenarioConfig::hbar)},
      {"mass", num(&ScenarioConfig::mass)},
      {"p0", num(&ScenarioConfig::p0)},
      {"sigma", num(&ScenarioConfig::sigma)},
      {"branch", str(&ScenarioConfig::branch)},
      {"p_start", num(&ScenarioConfig::p_start)},
      {"p_stop", num(&ScenarioConfig::p_stop)},
      {"p_count", integer(&ScenarioConfig::p_count)},
      {"t_start", num(&ScenarioConfig::t_start)},
      {"t_stop", num(&ScenarioConfig::t_stop)},
      {"t_count", integer(&ScenarioConfig::t_count)},
      {"x_start", num(&ScenarioConfig::x_start)},
      {"x_stop", num(&ScenarioConfig::x_stop)},
      {"x_count", integer(&ScenarioConfig::x_count)},
      {"eps_start", num(&ScenarioConfig::eps_start)},
      {"eps_stop", num(&ScenarioConfig::eps_stop)},
      {"eps_count", integer(&ScenarioConfig::eps_count)},
      {"x_eval",
       Setter([](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.x_eval = parse_list(k, v);
       })},
      {"e_n", num(&ScenarioConfig::e_n)},
      {"lambda", num(&ScenarioConfig::lambda)},
      {"gamma", num(&ScenarioConfig::gamma)},
      {"n_events", integer(&ScenarioConfig::n_events)},
      {"seed",
       Setter([](ScenarioConfig& c, const std::string& k, const std::string& v) {
         unsigned long long out = 0;
         const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
         if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
           throw ConfigError("config: invalid integer for '" + k + "': " + v);
         c.seed = out;
       })},
      {"out", str(&ScenarioConfig::out)},
  };
  return table;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("config: unknown key '" + key + "'");
    it->second(cfg, key, value);
  }
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in);
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "scenario = " << cfg.scenario << "\n";
  out << "hbar = " << format_number(cfg.hbar) << "\n";
  out << "mass = " << format_number(cfg.mass) << "\n";
  out << "p0 = " << format_number(cfg.p0) << "\n";
  out << "sigma = " << format_number(cfg.sigma) << "\n";
  out << "branch = " << cfg.branch << "\n";
  out << "p_start = " << format_number(cfg.p_start) << "\n";
  out << "p_stop = " << format_number(cfg.p_stop) << "\n";
  out << "p_count = " << cfg.p_count << "\n";
  out << "t_start = " << format_number(cfg.t_start) << "\n";
  out << "t_stop = " << format_number(cfg.t_stop) << "\n";
  out << "t_count = " << cfg.t_count << "\n";
  out << "x_start = " << format_number(cfg.x_start) << "\n";
  out << "x_stop = " << format_number(cfg.x_stop) << "\n";
  out << "x_count = " << cfg.x_count << "\n";
  out << "eps_start = " << format_number(cfg.eps_start) << "\n";
  out << "eps_stop = " << format_number(cfg.eps_stop) << "\n";
  out << "eps_count = " << cfg.eps_count << "\n";
  out << "x_eval = ";
  for (std::size_t i = 0; i < cfg.x_eval.size(); ++i) {
    if (i) out << ", ";
    out << format_number(cfg.x_eval[i]);
  }
  out << "\n";
  out << "e_n = " << format_number(cfg.e_n) << "\n";
  out << "lambda = " << format_number(cfg.lambda) << "\n";
  out << "gamma = " << format_number(cfg.gamma) << "\n";
  out << "n_events = " << cfg.n_events << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "out = " << cfg.out << "\n";
  return out.str();
}

}  // namespace stqm::cli
