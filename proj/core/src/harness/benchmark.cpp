#include "chembalance/harness/benchmark.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "chembalance/balance/iteration.hpp"
#include "chembalance/cpu_timer.hpp"
#include "chembalance/error.hpp"
#include "chembalance/refmap/refmap.hpp"

namespace chembalance::harness {

double BenchmarkReport::chi_su() const {
  if (!(total_wall_s > 0.0)) return 1.0;
  return baseline_wall_s > 0.0 ? baseline_wall_s / total_wall_s : 1.0;
}

double BenchmarkReport::mean_imbalance(int first, int last) const {
  double sum = 0.0;
  int count = 0;
  for (const auto& it : iterations) {
    if (it.iteration < first || it.iteration > last) continue;
    sum += it.imbalance;
    ++count;
  }
  return count == 0 ? 1.0 : sum / count;
}

void BenchmarkReport::set_baseline(std::string label_, double wall_s) {
  baseline_label = std::move(label_);
  baseline_wall_s = wall_s;
}

kinetics::Mechanism configure_mechanism(const RunConfig& config,
                                        const kinetics::Mechanism& base) {
  if (config.fuel.empty() && config.oxidizer.empty()) return base;
  auto fuel = config.fuel.empty() ? base.fuel_stream()
                                  : kinetics::parse_composition(base, config.fuel);
  auto ox = config.oxidizer.empty() ? base.oxidizer_stream()
                                    : kinetics::parse_composition(base, config.oxidizer);
  return base.with_streams(std::move(fuel), std::move(ox));
}

namespace {

struct WorkerResult {
  std::vector<kinetics::CompositionVector> states;  // owned cells, in order
  std::vector<balance::ChemistrySolution> solutions;
  std::vector<std::pair<balance::CellId, balance::CellId>> mapped;  // cell, reference
  WorkerRecord record;
};

struct Partition {
  std::size_t begin;
  std::size_t end;
};

std::vector<Partition> partition_cells(std::size_t n, int workers) {
  std::vector<Partition> out;
  for (int r = 0; r < workers; ++r) {
    out.push_back({n * r / workers, n * (r + 1) / workers});
  }
  return out;
}

class Driver {
 public:
  Driver(const RunConfig& config, const kinetics::Mechanism& mech, FieldState initial)
      : config_(config),
        mech_(mech),
        settings_{config.tol, config.jacobian_mode(), config.balancing(), config.theta},
        field_(std::move(initial)),
        parts_(partition_cells(field_.size(), config.workers)),
        cost_(field_.size(), -1.0) {}

  BenchmarkRun run(const IterationObserver& observer) {
    BenchmarkReport report;
    report.label = std::string(to_string(config_.mode));
    report.workers = config_.workers;
    const double host_start = wall_seconds();
    if (observer) observer(0, field_);
    for (int k = 1; k <= config_.iterations; ++k) {
      report.iterations.push_back(iterate(k, report));
      if (observer) observer(k, field_);
    }
    report.host_wall_s = wall_seconds() - host_start;
    for (const auto& it : report.iterations) {
      report.total_wall_s += it.critical_path_s + it.serial_s;
    }
    report.final_max_temperature = 0.0;
    for (const auto& c : field_.cells) {
      report.final_max_temperature = std::max(report.final_max_temperature, c.temperature);
    }
    return {std::move(report), std::move(field_)};
  }

 private:
  IterationRecord iterate(int k, BenchmarkReport& report) {
    const double host_start = wall_seconds();
    const int workers = config_.workers;
    balance::LocalHub hub(workers);
    std::vector<WorkerResult> results(workers);
    std::vector<std::exception_ptr> errors(workers);
    const double default_cost = default_cost_estimate();

    {
      std::vector<std::jthread> threads;
      threads.reserve(workers);
      for (int r = 0; r < workers; ++r) {
        threads.emplace_back([&, r] {
          try {
            auto endpoint = hub.endpoint(r);
            results[r] = work(r, *endpoint, default_cost);
          } catch (...) {
            errors[r] = std::current_exception();
            hub.abort();
          }
        });
      }
    }
    rethrow_first(errors);

    ThreadCpuTimer serial;
    IterationRecord record;
    record.iteration = k;
    std::vector<double> busy;
    std::fill(cost_.begin(), cost_.end(), -1.0);
    for (int r = 0; r < workers; ++r) {
      auto& res = results[r];
      std::copy(res.states.begin(), res.states.end(),
                field_.cells.begin() + static_cast<std::ptrdiff_t>(parts_[r].begin));
      for (const auto& s : res.solutions) {
        cost_[s.cell_id] = s.measured_cost;
        report.stats += s.stats;
      }
      for (const auto& [cell, ref] : res.mapped) cost_[cell] = cost_[ref];
      report.solves_explicit += res.record.solves_explicit;
      report.solves_mapped += res.record.solves_mapped;
      record.critical_path_s = std::max(record.critical_path_s, res.record.worker_s);
      busy.push_back(res.record.busy_s);
      record.workers.push_back(res.record);
    }
    record.imbalance = balance::imbalance_ratio(busy);
    mixing_step(field_, mech_, config_.diffusivity, config_.dt);
    record.serial_s = serial.elapsed();
    record.host_wall_s = wall_seconds() - host_start;
    return record;
  }

  WorkerResult work(int rank, balance::Messenger& messenger, double default_cost) {
    ThreadCpuTimer timer;
    const auto [begin, end] = parts_[rank];
    const std::size_t n = end - begin;
    std::span<const kinetics::CompositionVector> own(field_.cells.data() + begin, n);

    std::vector<refmap::CellSample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
      samples[i] = {static_cast<balance::CellId>(begin + i), field_.z[begin + i],
                    own[i].temperature};
    }
    refmap::RefMapConfig rc = config_.refmap;
    rc.enabled = config_.mapping();
    const auto zones = refmap::assign_zones(samples, rc);

    std::vector<balance::ChemistryProblem> problems;
    problems.reserve(zones.explicit_count());
    for (std::size_t i = 0; i < n; ++i) {
      if (zones.disposition[i] != refmap::Disposition::solve_explicit) continue;
      const double c = cost_[begin + i];
      problems.push_back({samples[i].cell_id, own[i], field_.pressure, config_.dt,
                          c >= 0.0 ? c : default_cost});
    }

    auto outcome = balance::run_balanced_iteration(mech_, problems, messenger, settings_);

    std::map<balance::CellId, kinetics::CompositionVector> solved;
    for (const auto& s : outcome.solutions) solved.emplace(s.cell_id, s.phi);
    WorkerResult out;
    out.states = refmap::apply_mapping(zones, samples, own, solved);
    out.solutions = std::move(outcome.solutions);
    for (std::size_t i = 0; i < n; ++i) {
      if (zones.disposition[i] == refmap::Disposition::map_from_reference) {
        out.mapped.emplace_back(samples[i].cell_id, samples[zones.reference_of[i]].cell_id);
      }
    }
    out.record.rank = rank;
    out.record.busy_s = outcome.timing.busy_seconds;
    out.record.solves_explicit = outcome.timing.local_solves + outcome.timing.guest_solves;
    out.record.solves_mapped = static_cast<int>(zones.mapped_count());
    out.record.guests = outcome.timing.guest_solves;
    out.record.sent = outcome.timing.problems_sent;
    out.record.worker_s = timer.elapsed();
    return out;
  }

  // Mapped cells inherit their reference's cost. Cells without any estimate
  // cost the mean of last iteration's estimates; the first iteration is
  // uniform.
  double default_cost_estimate() const {
    double sum = 0.0;
    long count = 0;
    for (double c : cost_) {
      if (c < 0.0) continue;
      sum += c;
      ++count;
    }
    return count == 0 ? 1.0 : sum / static_cast<double>(count);
  }

  static void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    std::exception_ptr transport;
    for (const auto& e : errors) {
      if (!e) continue;
      try {
        std::rethrow_exception(e);
      } catch (const MessengerError&) {
        if (!transport) transport = e;
      } catch (...) {
        throw;
      }
    }
    if (transport) std::rethrow_exception(transport);
  }

  const RunConfig& config_;
  const kinetics::Mechanism& mech_;
  balance::SolverSettings settings_;
  FieldState field_;
  std::vector<Partition> parts_;
  std::vector<double> cost_;
};

}  // namespace

BenchmarkRun run_benchmark(const RunConfig& config, const kinetics::Mechanism& mech,
                           const IterationObserver& observer) {
  config.validate();
  return Driver(config, mech, init_shear_layer(mech, config.layer, config.nx, config.ny))
      .run(observer);
}

BenchmarkRun run_benchmark(const RunConfig& config, const kinetics::Mechanism& mech,
                           FieldState initial, const IterationObserver& observer) {
  config.validate();
  if (initial.size() < static_cast<std::size_t>(config.workers)) {
    throw ConfigError("initial field has fewer cells than workers");
  }
  if (initial.z.size() != initial.size()) refresh_mixture_fraction(initial, mech);
  return Driver(config, mech, std::move(initial)).run(observer);
}

std::vector<SingleCellRow> single_cell_benchmark(const kinetics::Mechanism& mech,
                                                 const kinetics::CompositionVector& phi0,
                                                 double p, double dt,
                                                 std::span<const ode::ToleranceSpec> sweep,
                                                 std::span<const ode::JacobianMode> modes,
                                                 int repetitions) {
  if (repetitions < 1) throw Error("single_cell_benchmark: repetitions must be >= 1");
  std::vector<SingleCellRow> rows;
  for (const auto& tol : sweep) {
    for (auto mode : modes) rows.push_back({tol, mode, 0.0, 0, 0, 0});
  }
  for (int rep = 0; rep < repetitions; ++rep) {
    for (auto& row : rows) {
      const auto result = ode::integrate(mech, phi0, p, dt, row.tol, row.mode);
      row.mean_seconds += result.stats.cpu_time;
      row.rhs_evals = result.stats.rhs_evals;
      row.jacobian_evals = result.stats.jacobian_evals;
      ++row.repetitions;
    }
  }
  for (auto& row : rows) row.mean_seconds /= row.repetitions;
  return rows;
}

std::string single_cell_csv(std::span<const SingleCellRow> rows) {
  std::ostringstream out;
  out.precision(6);
  out << "abstol,reltol,mode,mean_seconds,rhs_evals,jacobian_evals\n";
  for (const auto& r : rows) {
    out << r.tol.abstol << ',' << r.tol.reltol << ',' << ode::to_string(r.mode) << ','
        << r.mean_seconds << ',' << r.rhs_evals << ',' << r.jacobian_evals << '\n';
  }
  return out.str();
}

}  // namespace chembalance::harness
