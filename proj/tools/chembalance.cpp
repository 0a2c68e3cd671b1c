#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chembalance/error.hpp"
#include "chembalance/harness/benchmark.hpp"
#include "chembalance/harness/config.hpp"
#include "chembalance/harness/report.hpp"
#include "chembalance/kinetics/mechanism.hpp"
#include "chembalance/kinetics/mixture_fraction.hpp"

namespace cb = chembalance;

namespace {

struct RunArgs {
  std::string config;
  std::string out = "chembalance_out";
  std::string baseline_summary;
  std::vector<std::pair<std::string, std::string>> overrides;
};

struct SingleCellArgs {
  std::string mech;
  std::string sweep = "1e-8,1e-10,1e-12";
  double reltol = 1e-5;
  std::optional<double> temperature;
  std::optional<double> z;
  double pressure = cb::constants::one_atm;
  double dt = 1e-4;
  int reps = 5;
};

std::vector<cb::ode::ToleranceSpec> parse_sweep(const std::string& text, double reltol) {
  std::vector<cb::ode::ToleranceSpec> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    cb::ode::ToleranceSpec tol{0.0, reltol};
    const auto colon = item.find(':');
    try {
      tol.abstol = std::stod(item.substr(0, colon));
      if (colon != std::string::npos) tol.reltol = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw cb::ConfigError("invalid sweep entry '" + item + "'");
    }
    if (!(tol.abstol > 0.0) || !(tol.reltol > 0.0)) {
      throw cb::ConfigError("sweep tolerances must be positive");
    }
    out.push_back(tol);
  }
  if (out.empty()) throw cb::ConfigError("empty tolerance sweep");
  return out;
}

int run_command(const RunArgs& args) {
  auto config = cb::harness::load_run_config(args.config);
  for (const auto& [key, value] : args.overrides) config.set(key, value);
  config.validate();

  const auto mech =
      cb::harness::configure_mechanism(config, cb::kinetics::load_mechanism(config.mechanism));
  const std::filesystem::path out_dir = args.out;
  cb::harness::IterationObserver observer;
  if (config.snapshot_every > 0) {
    std::filesystem::create_directories(out_dir);
    observer = [&](int k, const cb::harness::FieldState& field) {
      if (k % config.snapshot_every != 0) return;
      std::ostringstream name;
      name << "field_" << std::setw(4) << std::setfill('0') << k << ".csv";
      std::ofstream file(out_dir / name.str());
      if (!file) throw cb::Error("cannot write snapshot " + name.str());
      file.precision(17);
      cb::harness::write_field_csv(field, mech, file);
    };
  }

  auto run = cb::harness::run_benchmark(config, mech, observer);
  if (!args.baseline_summary.empty()) {
    auto [label, wall] = cb::harness::read_summary_wall(args.baseline_summary);
    run.report.set_baseline(label, wall);
  }
  cb::harness::emit_report(run.report, out_dir);
  cb::harness::write_summary(run.report, std::cout);
  return 0;
}

int single_cell_command(const SingleCellArgs& args) {
  const auto mech = cb::kinetics::load_mechanism(args.mech);
  const double z = args.z.value_or(cb::kinetics::stoichiometric_z(mech));
  const auto phi0 = cb::kinetics::CompositionVector::from_full(
      args.temperature.value_or(1000.0), cb::kinetics::blend_streams(mech, z));
  const auto sweep = parse_sweep(args.sweep, args.reltol);
  const std::vector modes{cb::ode::JacobianMode::analytical,
                          cb::ode::JacobianMode::finite_difference};
  const auto rows =
      cb::harness::single_cell_benchmark(mech, phi0, args.pressure, args.dt, sweep, modes,
                                         args.reps);
  std::cout << cb::harness::single_cell_csv(rows);
  return 0;
}

int check_mech_command(const std::string& path) {
  const auto mech = cb::kinetics::load_mechanism(path);
  std::cout << "species = " << mech.n_species() << '\n'
            << "reactions = " << mech.reactions().size() << '\n'
            << "elements = " << mech.elements().size() << '\n';
  try {
    std::cout << "z_stoich = " << cb::kinetics::stoichiometric_z(mech) << '\n';
  } catch (const cb::DegenerateStreamsError& e) {
    std::cout << "z_stoich = undefined (" << e.what() << ")\n";
  }
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel finite-rate chemistry with dynamic load balancing"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run the 2D shear-layer benchmark");
  run->add_option("--config", run_args.config, "Run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", run_args.out, "Output directory");
  run->add_option("--baseline-summary", run_args.baseline_summary,
                  "summary.txt of the run chi_su is measured against")
      ->check(CLI::ExistingFile);
  for (const char* key : {"nx", "ny", "workers", "snapshot_every", "iters", "dt", "abstol", "reltol", "mode",
                          "refmap", "seed"}) {
    const std::string name = key;
    const std::string config_key = name == "iters" ? "iterations" : name;
    run->add_option_function<std::string>(
        "--" + name,
        [&run_args, config_key](const std::string& value) {
          run_args.overrides.emplace_back(config_key, value);
        },
        "Override '" + config_key + "'");
  }

  SingleCellArgs sc_args;
  auto* single = app.add_subcommand("single-cell", "Time one cell across tolerances");
  single->add_option("--mech", sc_args.mech, "Mechanism file")
      ->required()
      ->check(CLI::ExistingFile);
  single->add_option("--sweep", sc_args.sweep,
                     "Comma-separated abstol list; entries may be abstol:reltol");
  single->add_option("--reltol", sc_args.reltol, "Relative tolerance for plain entries");
  single->add_option("--T", sc_args.temperature, "Initial temperature [K] (default 1000)");
  single->add_option("--z", sc_args.z, "Mixture fraction (default stoichiometric)");
  single->add_option("--p", sc_args.pressure, "Pressure [Pa]");
  single->add_option("--dt", sc_args.dt, "Integration interval [s]");
  single->add_option("--reps", sc_args.reps, "Repetitions per configuration")
      ->check(CLI::Range(1, 100000));

  std::string mech_path;
  auto* check = app.add_subcommand("check-mech", "Parse and validate a mechanism file");
  check->add_option("path", mech_path, "Mechanism file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_command(run_args);
    if (*single) return single_cell_command(sc_args);
    if (*check) return check_mech_command(mech_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
