#include "pwframes/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pwf {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + key + ": " + v);
  }
  if (pos != v.size())
    throw std::invalid_argument("bad value for " + key + ": " + v);
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int n = static_cast<int>(x);
  if (n != x) throw std::invalid_argument(key + " must be an integer");
  return n;
}

}  // namespace

void set_config_key(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "r_max")
    cfg.r_max = to_double(key, value);
  else if (key == "n_r")
    cfg.n_r = to_int(key, value);
  else if (key == "n_theta")
    cfg.n_theta = to_int(key, value);
  else if (key == "lambda_max")
    cfg.lambda_max = to_double(key, value);
  else if (key == "n_lambda")
    cfg.n_lambda = to_int(key, value);
  else if (key == "n_b")
    cfg.n_b = to_int(key, value);
  else if (key == "delta")
    cfg.delta = to_double(key, value);
  else if (key == "a0") {
    if (value == "calibrate") {
      cfg.a0_calibrate = true;
    } else {
      cfg.a0 = to_double(key, value);
      cfg.a0_calibrate = false;
    }
  } else if (key == "j_max")
    cfg.j_max = to_int(key, value);
  else if (key == "lambda_pu")
    cfg.lambda_pu = to_double(key, value);
  else if (key == "seed")
    cfg.seed = static_cast<unsigned>(to_int(key, value));
  else if (key == "output_dir")
    cfg.output_dir = value;
  else
    throw std::invalid_argument("unknown config key: " + key);
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    set_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (cfg.r_max <= 0.0) fail("r_max must be positive");
  if (cfg.n_r < 4) fail("n_r too small");
  if (cfg.n_theta < 8) fail("n_theta too small");
  if (cfg.lambda_max <= 0.0) fail("lambda_max must be positive");
  if (cfg.n_lambda < 4) fail("n_lambda too small");
  if (cfg.n_b != cfg.n_theta)
    fail("n_b must equal n_theta (shared boundary FFT grid)");
  if (cfg.delta <= 0.0 || cfg.delta >= 1.0) fail("delta must be in (0, 1)");
  if (!cfg.a0_calibrate && cfg.a0 <= 0.0) fail("a0 must be positive");
  if (cfg.j_max < 1) fail("j_max must be >= 1");
  if (std::ldexp(2.0, cfg.j_max) > cfg.lambda_max)
    fail("2^{j_max+1} exceeds lambda_max");
  if (cfg.lambda_pu <= 0.0 || cfg.lambda_pu > cfg.r_max)
    fail("lambda_pu must be in (0, r_max]");
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
  return {{"r_max", cfg.r_max},
          {"n_r", cfg.n_r},
          {"n_theta", cfg.n_theta},
          {"lambda_max", cfg.lambda_max},
          {"n_lambda", cfg.n_lambda},
          {"n_b", cfg.n_b},
          {"delta", cfg.delta},
          {"a0", cfg.a0},
          {"a0_calibrate", cfg.a0_calibrate},
          {"j_max", cfg.j_max},
          {"lambda_pu", cfg.lambda_pu},
          {"seed", cfg.seed},
          {"output_dir", cfg.output_dir}};
}

}  // namespace pwf
