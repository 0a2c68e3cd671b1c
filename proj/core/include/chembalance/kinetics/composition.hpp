#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chembalance::kinetics {

/// Thermochemical state of one cell at constant pressure: temperature and the
/// first N-1 mass fractions. The last species' mass fraction is implied as
/// 1 - sum(stored), so mass conservation holds by construction.
struct CompositionVector {
  double temperature = 0.0;            // K
  std::vector<double> mass_fractions;  // Y_1 .. Y_{N-1}

  std::size_t state_size() const noexcept { return 1 + mass_fractions.size(); }
  double implied_mass_fraction() const noexcept;
  /// All N mass fractions, implied one last.
  std::vector<double> full_mass_fractions() const;
  /// Flattened (T, Y_1..Y_{N-1}).
  std::vector<double> to_state() const;

  static CompositionVector from_state(std::span<const double> state);
  /// Builds from a full N-vector; the last entry is dropped (implied).
  static CompositionVector from_full(double T, std::span<const double> full_y);

  /// Checks T > 0, stored Y in [0,1], implied Y in [0,1] within tol.
  bool is_valid(double tol = 1e-10) const noexcept;

  friend bool operator==(const CompositionVector&,
                         const CompositionVector&) = default;
};

}  // namespace chembalance::kinetics
