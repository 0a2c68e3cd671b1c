#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chembalance/harness/config.hpp"
#include "chembalance/harness/field.hpp"
#include "chembalance/kinetics/mechanism.hpp"
#include "chembalance/ode/integrator.hpp"

namespace chembalance::harness {

struct WorkerRecord {
  int rank = 0;
  double busy_s = 0.0;    // thread CPU time inside chemistry solves
  double worker_s = 0.0;  // thread CPU time of the whole worker body
  int solves_explicit = 0;  // problems solved here, guests included
  int solves_mapped = 0;    // owned cells filled from a reference
  int guests = 0;
  int sent = 0;
};

struct IterationRecord {
  int iteration = 0;
  std::vector<WorkerRecord> workers;
  double imbalance = 1.0;
  double critical_path_s = 0.0;  // slowest worker
  double serial_s = 0.0;         // gather, mixing and bookkeeping
  double host_wall_s = 0.0;
};

struct BenchmarkReport {
  std::string label;
  int workers = 0;
  std::vector<IterationRecord> iterations;
  /// Modelled wall time: per iteration, the slowest worker plus the serial
  /// part, summed.
  double total_wall_s = 0.0;
  double host_wall_s = 0.0;
  std::string baseline_label;
  double baseline_wall_s = 0.0;  // 0 when no baseline is set
  long solves_explicit = 0;
  long solves_mapped = 0;
  ode::IntegratorStats stats;
  double final_max_temperature = 0.0;

  /// baseline_wall / this_wall; the run itself when no baseline is set.
  double chi_su() const;
  /// Mean imbalance over iterations in [first, last] (1-based, inclusive,
  /// clipped to the run).
  double mean_imbalance(int first, int last) const;
  void set_baseline(std::string label, double wall_s);
};

struct BenchmarkRun {
  BenchmarkReport report;
  FieldState field;
};

using IterationObserver = std::function<void(int iteration, const FieldState&)>;

/// Applies the config's stream overrides to the mechanism.
kinetics::Mechanism configure_mechanism(const RunConfig& config,
                                        const kinetics::Mechanism& base);

/// Runs the shear-layer benchmark with config.workers concurrent workers.
/// `mech` must already carry the run's streams.
BenchmarkRun run_benchmark(const RunConfig& config, const kinetics::Mechanism& mech,
                           const IterationObserver& observer = {});
/// Same, starting from `initial` instead of the shear-layer profile. The
/// grid size in the config is ignored.
BenchmarkRun run_benchmark(const RunConfig& config, const kinetics::Mechanism& mech,
                           FieldState initial, const IterationObserver& observer = {});

struct SingleCellRow {
  ode::ToleranceSpec tol;
  ode::JacobianMode mode = ode::JacobianMode::analytical;
  double mean_seconds = 0.0;
  long rhs_evals = 0;
  long jacobian_evals = 0;
  int repetitions = 0;
};

/// Mean thread CPU time per mode and tolerance. Repetitions are interleaved
/// across configurations.
std::vector<SingleCellRow> single_cell_benchmark(const kinetics::Mechanism& mech,
                                                 const kinetics::CompositionVector& phi0,
                                                 double p, double dt,
                                                 std::span<const ode::ToleranceSpec> sweep,
                                                 std::span<const ode::JacobianMode> modes,
                                                 int repetitions);

std::string single_cell_csv(std::span<const SingleCellRow> rows);

}  // namespace chembalance::harness
