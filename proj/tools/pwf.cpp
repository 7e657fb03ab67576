#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pwframes/suites.hpp"

namespace {

namespace fs = std::filesystem;

void write_reports(const std::vector<pwf::Report>& reps,
                   const std::string& out_dir) {
  fs::create_directories(out_dir);
  nlohmann::json doc = nlohmann::json::array();
  for (const pwf::Report& rep : reps) {
    doc.push_back(pwf::report_json(rep));
    for (const auto& [stem, body] : rep.csv) {
      std::ofstream csv(fs::path(out_dir) / (stem + ".csv"));
      csv << body;
    }
  }
  std::ofstream out(fs::path(out_dir) / "report.json");
  out << doc.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearly Parseval bandlimited frames on the hyperbolic plane"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", a0_arg;
  unsigned seed = 0;
  bool have_seed = false, have_delta = false, have_jmax = false;
  double delta = 0.0;
  int jmax = 0;

  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out_dir, "output directory for report.json / CSVs");
  app.add_option("--seed", seed, "random seed override")
      ->each([&](const std::string&) { have_seed = true; });
  app.add_option("--delta", delta, "frame tightness target in (0,1)")
      ->each([&](const std::string&) { have_delta = true; });
  app.add_option("--jmax", jmax, "top dyadic band index")
      ->each([&](const std::string&) { have_jmax = true; });
  app.add_option("--a0", a0_arg, "sampling rate constant, or 'calibrate'");

  struct Sub {
    const char* name;
    const char* desc;
    pwf::Report (*run)(const pwf::ExperimentConfig&);
  };
  const std::vector<Sub> subs{
      {"plancherel", "transform norm identity and oracle match",
       pwf::run_plancherel},
      {"frame-bounds", "global and per-band frame bounds",
       pwf::run_frame_bounds},
      {"reconstruct", "iterative reconstruction from frame coefficients",
       pwf::run_reconstruct},
      {"besov", "three-norm Besov equivalence", pwf::run_besov},
      {"decay", "atom band purity and decay profiles",
       pwf::run_band_purity_decay},
  };
  for (const Sub& s : subs) app.add_subcommand(s.name, s.desc)->fallthrough();
  app.add_subcommand("all", "every suite, including the spectral and "
                            "covering checks")
      ->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message / help text
    return code == 0 ? 0 : 2;
  }

  pwf::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = pwf::parse_config_file(config_path);
    if (have_seed) cfg.seed = seed;
    if (have_delta) cfg.delta = delta;
    if (have_jmax) cfg.j_max = jmax;
    if (!a0_arg.empty()) pwf::set_config_key(cfg, "a0", a0_arg);
    cfg.output_dir = out_dir;
    pwf::validate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  std::vector<pwf::Report> reps;
  try {
    if (app.got_subcommand("all")) {
      reps = pwf::run_all(cfg);
    } else {
      for (const Sub& s : subs)
        if (app.got_subcommand(s.name)) reps.push_back(s.run(cfg));
    }
    write_reports(reps, cfg.output_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  bool pass = true;
  for (const pwf::Report& rep : reps) {
    std::cout << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << " ("
              << rep.seconds << "s)\n";
    pass = pass && rep.pass;
  }
  return pass ? 0 : 1;
}
