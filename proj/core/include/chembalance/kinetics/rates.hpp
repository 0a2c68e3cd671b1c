#pragma once

#include <vector>

#include "chembalance/kinetics/composition.hpp"
#include "chembalance/kinetics/mechanism.hpp"

namespace chembalance::kinetics {

/// k_f = A T^b exp(-Ea / (R_cal T)), mol-cm-s units.
double rate_constant(const ReactionSpec& r, double T);

/// Equilibrium constant in concentration units (mol/cm^3)^delta_nu.
double equilibrium_constant(const Mechanism& mech, const ReactionSpec& r,
                            double T);

/// k_r = k_f / K_c. The reaction must be reversible.
double reverse_rate_constant(const Mechanism& mech, const ReactionSpec& r,
                             double T, double k_forward);

/// Molar concentrations in mol/cm^3. Negative mass fractions are treated as
/// zero here only; the state itself is not modified.
std::vector<double> concentrations(const Mechanism& mech,
                                   const CompositionVector& phi, double p);

/// Net molar production rate of every species, mol/(cm^3 s).
std::vector<double> production_rates(const Mechanism& mech,
                                     const CompositionVector& phi, double p);

}  // namespace chembalance::kinetics
