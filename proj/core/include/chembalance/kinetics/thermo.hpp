#pragma once

#include <span>

#include "chembalance/kinetics/mechanism.hpp"

namespace chembalance::kinetics {

struct ThermoProps {
  double cp = 0.0;       // J/(kmol K)
  double enthalpy = 0.0; // J/kmol
  double entropy = 0.0;  // J/(kmol K)
};

/// NASA-7 evaluation. Throws ThermoRangeError outside [T_low, T_high].
ThermoProps thermo_props(const SpeciesSpec& species, double T);

/// Dimensionless forms used by the rate and Jacobian kernels.
struct ReducedThermo {
  double cp_over_r = 0.0;
  double h_over_rt = 0.0;
  double s_over_r = 0.0;
  double dcp_over_r_dt = 0.0;  // 1/K
};

ReducedThermo reduced_thermo(const SpeciesSpec& species, double T);

/// Single-range polynomial evaluation, no range check.
ReducedThermo reduced_thermo(const std::array<double, 7>& a, double T) noexcept;

/// Fills `out` for every species of the mechanism. Range-checked.
void reduced_thermo_all(const Mechanism& mech, double T,
                        std::span<ReducedThermo> out);

}  // namespace chembalance::kinetics
