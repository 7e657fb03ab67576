#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "pwframes/suites.hpp"

// Acceptance gate: nine numbered criteria, one PASS/FAIL line each, run
// against a pinned configuration. An optional argument selects a single
// criterion by number.
namespace {

struct Criterion {
  const char* name;
  pwf::Report (*run)(const pwf::ExperimentConfig&);
  bool calibrate_a0;
};

const std::vector<Criterion> kCriteria{
    {"plancherel identity and oracle transform", pwf::run_plancherel, false},
    {"calderon resolution and band parseval", pwf::run_calderon, false},
    {"bernstein and jackson inequalities", pwf::run_bernstein_jackson, false},
    {"truncated riesz interpolation", pwf::run_riesz, false},
    {"nearly parseval frame bounds", pwf::run_frame_bounds, true},
    {"atom band purity and decay", pwf::run_band_purity_decay, false},
    {"iterative reconstruction", pwf::run_reconstruct, false},
    {"besov norm equivalence", pwf::run_besov, false},
    {"lattice separation, covering, multiplicity", pwf::run_covering, false},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(kCriteria.size())) {
      std::cerr << "usage: acceptance [1.." << kCriteria.size() << "]\n";
      return 2;
    }
  }

  pwf::ExperimentConfig cfg;  // pinned: the built-in defaults
  bool all_pass = true;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (only != 0 && only != static_cast<int>(i + 1)) continue;
    const Criterion& c = kCriteria[i];
    pwf::ExperimentConfig run_cfg = cfg;
    run_cfg.a0_calibrate = c.calibrate_a0;
    bool pass = false;
    double secs = 0.0;
    try {
      const pwf::Report rep = c.run(run_cfg);
      pass = rep.pass;
      secs = rep.seconds;
    } catch (const std::exception& e) {
      std::cerr << "C" << i + 1 << " raised: " << e.what() << '\n';
    }
    std::cout << 'C' << i + 1 << ' ' << c.name << ": "
              << (pass ? "PASS" : "FAIL") << " (" << secs << "s)\n";
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
