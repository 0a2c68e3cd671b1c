#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chembalance/kinetics/composition.hpp"
#include "chembalance/ode/integrator.hpp"

namespace chembalance::balance {

using CellId = std::int64_t;

/// One cell's chemistry work item, as shipped between workers.
struct ChemistryProblem {
  CellId cell_id = 0;
  kinetics::CompositionVector phi;
  double pressure = 0.0;       // Pa
  double dt = 0.0;             // s
  double cost_estimate = 0.0;  // s

  friend bool operator==(const ChemistryProblem&, const ChemistryProblem&) = default;
};

struct ChemistrySolution {
  CellId cell_id = 0;
  kinetics::CompositionVector phi;
  double measured_cost = 0.0;  // s
  ode::IntegratorStats stats;
};

/// Bytes per encoded problem for a mechanism with `n_species` species:
/// cell_id, dt, p, T, N-1 mass fractions, cost_estimate, 8 bytes each.
constexpr std::size_t problem_record_size(std::size_t n_species) noexcept {
  return 8 * (n_species + 4);
}

/// Bytes per encoded solution: cell_id, T, N-1 mass fractions, measured_cost,
/// five integer counters and cpu_time.
constexpr std::size_t solution_record_size(std::size_t n_species) noexcept {
  return 8 * (n_species + 8);
}

/// Little-endian layout: u64 count, then fixed-width records. Every problem
/// must carry n_species - 1 mass fractions.
std::vector<std::byte> encode_problems(std::span<const ChemistryProblem> problems);
std::vector<ChemistryProblem> decode_problems(std::span<const std::byte> buffer,
                                              std::size_t n_species);

std::vector<std::byte> encode_solutions(std::span<const ChemistrySolution> solutions);
std::vector<ChemistrySolution> decode_solutions(std::span<const std::byte> buffer,
                                                std::size_t n_species);

}  // namespace chembalance::balance
