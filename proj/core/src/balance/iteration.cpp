#include "chembalance/balance/iteration.hpp"

#include <string>
#include <unordered_map>
#include <unordered_set>

#include "chembalance/cpu_timer.hpp"
#include "chembalance/error.hpp"

namespace chembalance::balance {

ChemistrySolution solve_problem(const kinetics::Mechanism& mech,
                                const ChemistryProblem& problem,
                                const ode::ToleranceSpec& tol, ode::JacobianMode mode) {
  ode::ChemistryResult result;
  try {
    result = ode::integrate(mech, problem.phi, problem.pressure, problem.dt, tol, mode);
  } catch (const StiffnessFailure& e) {
    throw StiffnessFailure("cell " + std::to_string(problem.cell_id) + " (T0 = " +
                               std::to_string(problem.phi.temperature) + " K): " + e.what(),
                           e.time(), e.step(), e.state());
  }
  ChemistrySolution s;
  s.cell_id = problem.cell_id;
  s.phi = std::move(result.state);
  s.measured_cost = result.stats.cpu_time;
  s.stats = result.stats;
  return s;
}

namespace {

class Worker {
 public:
  Worker(const kinetics::Mechanism& mech, Messenger& messenger,
         const SolverSettings& settings)
      : mech_(mech), messenger_(messenger), settings_(settings) {
    timing_.rank = messenger.rank();
  }

  ChemistrySolution solve(const ChemistryProblem& p) {
    auto s = solve_problem(mech_, p, settings_.tol, settings_.mode);
    timing_.busy_seconds += s.measured_cost;
    timing_.stats += s.stats;
    return s;
  }

  IterationOutcome run(std::span<const ChemistryProblem> local) {
    const double start = wall_seconds();
    for (const auto& p : local) timing_.estimated_load += p.cost_estimate;

    std::unordered_map<CellId, ChemistrySolution> solved;
    if (!settings_.balance || messenger_.size() == 1) {
      for (const auto& p : local) {
        solved.emplace(p.cell_id, solve(p));
        ++timing_.local_solves;
      }
    } else {
      exchange(local, solved);
    }

    IterationOutcome out;
    out.solutions.reserve(local.size());
    for (const auto& p : local) {
      auto it = solved.find(p.cell_id);
      if (it == solved.end()) {
        throw ProtocolError("no solution for cell " + std::to_string(p.cell_id));
      }
      out.solutions.push_back(std::move(it->second));
    }
    timing_.wall_seconds = wall_seconds() - start;
    out.timing = timing_;
    return out;
  }

 private:
  void exchange(std::span<const ChemistryProblem> local,
                std::unordered_map<CellId, ChemistrySolution>& solved) {
    const int me = messenger_.rank();
    const auto loads = messenger_.all_gather(timing_.estimated_load);
    const auto budgets = plan_budgets(loads, settings_.theta);

    std::vector<CostEntry> costs;
    costs.reserve(local.size());
    for (const auto& p : local) costs.push_back({p.cell_id, p.cost_estimate});
    const auto selections = select_problems(me, budgets, costs);

    std::unordered_map<CellId, const ChemistryProblem*> by_id;
    for (const auto& p : local) by_id.emplace(p.cell_id, &p);

    // Ship every outgoing batch before solving anything.
    std::unordered_set<CellId> shipped;
    std::vector<std::pair<int, std::unordered_set<CellId>>> outstanding;
    std::size_t k = 0;
    for (const auto& b : budgets) {
      if (b.from_rank != me) continue;
      const auto& ids = selections[k++];
      std::vector<ChemistryProblem> batch;
      for (CellId id : ids) {
        batch.push_back(*by_id.at(id));
        shipped.insert(id);
      }
      timing_.problems_sent += static_cast<int>(batch.size());
      outstanding.emplace_back(b.to_rank, std::unordered_set<CellId>(ids.begin(), ids.end()));
      messenger_.send(b.to_rank, MessageTag::problems, encode_problems(batch));
    }

    for (const auto& p : local) {
      if (shipped.contains(p.cell_id)) continue;
      solved.emplace(p.cell_id, solve(p));
      ++timing_.local_solves;
    }

    const std::size_t n_species = mech_.n_species();
    for (const auto& b : budgets) {
      if (b.to_rank != me) continue;
      const auto guests =
          decode_problems(messenger_.receive(b.from_rank, MessageTag::problems), n_species);
      std::vector<ChemistrySolution> answers;
      answers.reserve(guests.size());
      for (const auto& g : guests) {
        answers.push_back(solve(g));
        ++timing_.guest_solves;
      }
      messenger_.send(b.from_rank, MessageTag::solutions, encode_solutions(answers));
    }

    for (auto& [peer, expected] : outstanding) {
      auto answers =
          decode_solutions(messenger_.receive(peer, MessageTag::solutions), n_species);
      if (answers.size() != expected.size()) {
        throw ProtocolError("rank " + std::to_string(peer) + " returned " +
                            std::to_string(answers.size()) + " solutions, expected " +
                            std::to_string(expected.size()));
      }
      for (auto& s : answers) {
        if (!expected.contains(s.cell_id) || solved.contains(s.cell_id)) {
          throw ProtocolError("unexpected solution for cell " + std::to_string(s.cell_id));
        }
        solved.emplace(s.cell_id, std::move(s));
      }
    }

    messenger_.all_gather(0.0);
    if (messenger_.has_pending()) {
      throw ProtocolError("rank " + std::to_string(me) + " holds an unplanned message");
    }
  }

  const kinetics::Mechanism& mech_;
  Messenger& messenger_;
  const SolverSettings& settings_;
  WorkerTiming timing_;
};

}  // namespace

IterationOutcome run_balanced_iteration(const kinetics::Mechanism& mech,
                                        std::span<const ChemistryProblem> local,
                                        Messenger& messenger,
                                        const SolverSettings& settings) {
  try {
    return Worker(mech, messenger, settings).run(local);
  } catch (...) {
    messenger.abort();
    throw;
  }
}

}  // namespace chembalance::balance
