#pragma once

#include <span>

#include "chembalance/kinetics/mechanism.hpp"

namespace chembalance::kinetics {

/// Bilger coupling function beta = 2 Z_C/W_C + Z_H/(2 W_H) - Z_O/W_O, in
/// kmol of atoms per kg. Elements other than C, H, O do not contribute.
double bilger_beta(const Mechanism& mech, std::span<const double> full_y);

/// Bilger mixture fraction relative to the mechanism's declared streams,
/// clamped to [0, 1]. Throws DegenerateStreamsError if beta_fuel == beta_ox.
double bilger_z(const Mechanism& mech, std::span<const double> full_y);

/// Mixture fraction at which beta vanishes (stoichiometric mixture).
double stoichiometric_z(const Mechanism& mech);

/// Z * fuel + (1 - Z) * oxidizer.
std::vector<double> blend_streams(const Mechanism& mech, double z);

}  // namespace chembalance::kinetics
