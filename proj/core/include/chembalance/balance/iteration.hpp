#pragma once

#include <span>
#include <vector>

#include "chembalance/balance/messenger.hpp"
#include "chembalance/balance/plan.hpp"
#include "chembalance/balance/problem.hpp"
#include "chembalance/kinetics/mechanism.hpp"
#include "chembalance/ode/integrator.hpp"

namespace chembalance::balance {

struct SolverSettings {
  ode::ToleranceSpec tol;
  ode::JacobianMode mode = ode::JacobianMode::analytical;
  bool balance = true;
  double theta = default_churn_threshold;
};

struct WorkerTiming {
  int rank = 0;
  double estimated_load = 0.0;  // s, before planning
  double busy_seconds = 0.0;    // thread CPU time spent in solves
  double wall_seconds = 0.0;
  int local_solves = 0;
  int guest_solves = 0;
  int problems_sent = 0;
  ode::IntegratorStats stats;
};

struct IterationOutcome {
  /// One solution per submitted problem, in submission order.
  std::vector<ChemistrySolution> solutions;
  WorkerTiming timing;
};

ChemistrySolution solve_problem(const kinetics::Mechanism& mech,
                                const ChemistryProblem& problem,
                                const ode::ToleranceSpec& tol, ode::JacobianMode mode);

/// Collective: every rank of the messenger must call this once per
/// iteration. With settings.balance false no messages are exchanged.
IterationOutcome run_balanced_iteration(const kinetics::Mechanism& mech,
                                        std::span<const ChemistryProblem> local,
                                        Messenger& messenger,
                                        const SolverSettings& settings);

}  // namespace chembalance::balance
