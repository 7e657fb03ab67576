#pragma once

#include <string>

#include "json.hpp"

// Experiment configuration: flat key=value files with programmatic
// overrides. Keys mirror the field names below; `a0 = calibrate` requests
// bisection calibration instead of a fixed value.
namespace pwf {

struct ExperimentConfig {
  // spatial grid
  double r_max = 4.0;
  int n_r = 160;
  int n_theta = 1024;
  // spectral grid
  double lambda_max = 16.0;
  int n_lambda = 64;
  int n_b = 1024;
  // frame parameters
  double delta = 0.5;
  double a0 = 0.5;
  bool a0_calibrate = false;
  int j_max = 3;
  double lambda_pu = 1.0;
  // run control
  unsigned seed = 1;
  std::string output_dir = ".";
};

// Parse `key = value` lines; '#' starts a comment; blank lines ignored.
// Unknown keys or unparseable values throw std::invalid_argument.
ExperimentConfig parse_config_file(const std::string& path);

// Apply a single key=value override (same keys as the file format).
void set_config_key(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

// Throws std::invalid_argument when an invariant is violated.
void validate(const ExperimentConfig& cfg);

nlohmann::json config_json(const ExperimentConfig& cfg);

}  // namespace pwf
