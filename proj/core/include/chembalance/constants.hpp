#pragma once

namespace chembalance::constants {

/// Universal gas constant, J/(kmol K).
inline constexpr double gas_constant = 8314.46261815324;
/// Universal gas constant in cal/(mol K), used for Arrhenius activation energies.
inline constexpr double gas_constant_cal = 1.9872036;
/// Standard-state pressure, Pa.
inline constexpr double one_atm = 101325.0;

/// kmol/m^3 per mol/cm^3.
inline constexpr double kmol_m3_per_mol_cm3 = 1.0e3;

}  // namespace chembalance::constants
