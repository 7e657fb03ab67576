#pragma once

#include <map>
#include <string>
#include <vector>

#include "pwframes/config.hpp"

// Verification suites shared by the CLI and the acceptance runner. Each
// suite builds what it needs from the config, runs its checks, and
// returns a machine-readable report; `csv` holds plot-ready side tables
// keyed by file stem.
namespace pwf {

struct Report {
  std::string name;
  nlohmann::json config;
  nlohmann::json metrics;
  bool pass = false;
  double seconds = 0.0;
  std::map<std::string, std::string> csv;
};

nlohmann::json report_json(const Report& rep);

// Plancherel identity on the radial family e^{-p cosh r} plus the
// Mehler-Fock oracle match of the forward transform for lambda <= 8.
// Uses a dedicated deep grid (r_max = 6) independent of cfg's.
Report run_plancherel(const ExperimentConfig& cfg);

// Calderon resolution sum_j F_j^2 = 1 and the Parseval band split.
Report run_calderon(const ExperimentConfig& cfg);

// Bernstein ratio <= 1 on PW_omega draws and the Jackson inequality
// E(f, omega) <= omega^{-2} ||Delta f||.
Report run_bernstein_jackson(const ExperimentConfig& cfg);

// Truncated Riesz interpolation series: residual monotone in K and the
// field-level residual matching the scalar one on single-lambda fields.
Report run_riesz(const ExperimentConfig& cfg);

// Rayleigh-quotient frame bounds, global and per band, on 20 seeded
// fields; calibrates a0 first when cfg.a0_calibrate is set.
Report run_frame_bounds(const ExperimentConfig& cfg);

// Frame-algorithm reconstruction: per-iteration contraction and final
// relative error after 30 iterations.
Report run_reconstruct(const ExperimentConfig& cfg);

// Atom band purity, N = 2 Schwartz-weighted decay profiles, and profile
// stability under doubling of the truncation radius.
Report run_band_purity_decay(const ExperimentConfig& cfg);

// Three-norm Besov equivalence on a dyadic family, empirical constant
// stability under grid refinement, and the alpha -> 0, q = 2 degeneracy.
Report run_besov(const ExperimentConfig& cfg);

// Brute-force lattice properties: r/4-ball disjointness, r/2-ball
// covering, and finite empirical multiplicity.
Report run_covering(const ExperimentConfig& cfg);

std::vector<Report> run_all(const ExperimentConfig& cfg);

}  // namespace pwf
