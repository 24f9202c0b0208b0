// esddfd command-line driver.
//
//   esddfd decay --lambda 1 --t-final 1 --h0 0.125 --levels 5
//   esddfd pde --a 1 --b 0 --m-points 32 --dts 0.01,0.1,1 --t-final 2
//   esddfd run experiments.cfg --out results --format json
//
// Exit codes: 0 success, 2 configuration error, 3 runtime abort.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esddfd/harness/config.hpp"
#include "esddfd/harness/experiments.hpp"
#include "esddfd/harness/report.hpp"

namespace fs = std::filesystem;
using namespace esddfd::harness;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Subcommand {
  CLI::App* app = nullptr;
  Experiment experiment = Experiment::DecayOrder;
  // Storage for each option, keyed by config key.
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

// Flag is --key with dashes, unless given (e.g. -h is taken by --help).
void add_key(Subcommand& sub, const std::string& key, const std::string& help, std::string flag = {}) {
  if (flag.empty()) {
    flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
  }
  sub.options[key] = sub.app->add_option(flag, sub.values[key], help);
}

std::map<std::string, std::string> given(const Subcommand& sub) {
  std::map<std::string, std::string> out;
  for (const auto& [key, opt] : sub.options) {
    if (opt->count() > 0) {
      out[key] = sub.values.at(key);
    }
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError({{0, "", "cannot read config file " + path.string()}});
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_report(const ExperimentConfig& config, const ExperimentReport& report, const fs::path& out_dir,
                      const std::string& format_flag) {
  const std::string format = !format_flag.empty() ? format_flag : config.text("format");
  const std::string stem = config.has("output") ? config.text("output") : config.name;
  fs::create_directories(out_dir);
  const fs::path path = out_dir / (stem + "." + format);
  if (format == "json") {
    emit_json(report, path);
  } else if (format == "svg") {
    emit_svg(report, default_plot(config.experiment), path);
  } else {
    emit_csv(report, path);
  }
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spectral denominator discretizations: experiments and reports"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::string format;
  int seed = 0;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Report format (default: config value or csv)")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--seed", seed, "Reserved; all experiments are deterministic");

  std::vector<Subcommand> subs;
  subs.reserve(6);
  auto make = [&](const char* name, const char* help, Experiment e) -> Subcommand& {
    subs.push_back({app.add_subcommand(name, help), e, {}, {}});
    subs.back().app->fallthrough();
    return subs.back();
  };

  auto& decay = make("decay", "Observed order of the decay-equation schemes", Experiment::DecayOrder);
  add_key(decay, "lambda", "Decay rate");
  add_key(decay, "t_final", "Final time");
  add_key(decay, "h0", "Coarsest step");
  add_key(decay, "levels", "Number of step halvings (>= 4)");
  add_key(decay, "x0", "Initial value");
  add_key(decay, "schemes", "Comma-separated scheme names");

  auto& ho = make("ho", "Exact harmonic-oscillator scheme", Experiment::HoExact);
  add_key(ho, "omega", "Angular frequency");
  add_key(ho, "h", "Step size", "--step");
  add_key(ho, "n_steps", "Number of steps");
  add_key(ho, "y0", "Initial position");
  add_key(ho, "v0", "Initial velocity");

  auto& pde = make("pde", "Diffusion-reaction solver comparison or stability sweep", Experiment::PdeCompare);
  bool stability = false;
  pde.app->add_flag("--stability", stability, "Amplification sweep instead of an error comparison");
  add_key(pde, "a", "Diffusion coefficient");
  add_key(pde, "b", "Reaction coefficient");
  add_key(pde, "m_points", "Periodic grid points");
  add_key(pde, "dts", "Comma-separated time steps");
  add_key(pde, "t_final", "Final time (comparison only)");
  add_key(pde, "length", "Period length");
  add_key(pde, "ic_modes", "Initial condition as amplitude:wavenumber pairs");
  add_key(pde, "methods", "Comma-separated solver names");
  add_key(pde, "esddfd_k", "Fourier parameter of the physical-space spectral scheme");
  add_key(pde, "esddfd_s", "Laplace parameter of the physical-space spectral scheme");

  auto& ml = make("ml", "Mittag-Leffler function against closed forms", Experiment::MlIdentities);
  add_key(ml, "alphas", "Comma-separated orders (0.5 and/or 1)");
  add_key(ml, "zs", "Comma-separated arguments");

  auto& sig = make("signature", "Recover the relaxation exponent from near-origin samples", Experiment::SignatureDemo);
  add_key(sig, "alpha", "Comma-separated true exponents in (0, 1]");
  add_key(sig, "lambda", "Relaxation rate");
  add_key(sig, "propagator", "local or nonlocal");
  add_key(sig, "t_min", "Start of the sampling window");
  add_key(sig, "t_max", "End of the sampling window");
  add_key(sig, "samples", "Number of log-spaced samples");

  auto& lap = make("laplace", "Laplace-mode boundary value problem convergence", Experiment::LaplaceBvp);
  add_key(lap, "s", "Laplace variable (> b)");
  add_key(lap, "a", "Diffusion coefficient");
  add_key(lap, "b", "Reaction coefficient");
  add_key(lap, "levels", "Number of grid halvings");
  add_key(lap, "n0", "Coarsest number of intervals");
  add_key(lap, "ic_modes", "Initial condition as amplitude:multiple-of-pi pairs");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run every experiment in a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::vector<ExperimentConfig> configs;
  try {
    if (run->parsed()) {
      configs = parse_batch(read_file(config_path));
    } else {
      for (auto& sub : subs) {
        if (sub.app->parsed()) {
          const Experiment e = (&sub == &pde && stability) ? Experiment::PdeStability : sub.experiment;
          auto values = given(sub);
          if (e == Experiment::PdeStability) {
            values.erase("t_final");
          }
          configs.push_back(make_config(e, values));
        }
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  int status = 0;
  for (const auto& result : run_batch(configs)) {
    if (!result.report) {
      std::cerr << result.config.name << ": " << result.error << "\n";
      status = kExitRuntime;
      continue;
    }
    try {
      std::cout << write_report(result.config, *result.report, out_dir, format).string() << "\n";
    } catch (const std::exception& e) {
      std::cerr << result.config.name << ": " << e.what() << "\n";
      status = kExitRuntime;
    }
  }
  return status;
}
