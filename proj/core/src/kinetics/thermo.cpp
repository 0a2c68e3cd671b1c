#include "chembalance/kinetics/thermo.hpp"

#include <cmath>

#include "chembalance/constants.hpp"
#include "chembalance/error.hpp"

namespace chembalance::kinetics {

ReducedThermo reduced_thermo(const std::array<double, 7>& a, double T) noexcept {
  ReducedThermo r;
  r.cp_over_r = a[0] + T * (a[1] + T * (a[2] + T * (a[3] + T * a[4])));
  r.h_over_rt = a[0] +
                T * (a[1] / 2 + T * (a[2] / 3 + T * (a[3] / 4 + T * a[4] / 5))) +
                a[5] / T;
  r.s_over_r = a[0] * std::log(T) +
               T * (a[1] + T * (a[2] / 2 + T * (a[3] / 3 + T * a[4] / 4))) + a[6];
  r.dcp_over_r_dt = a[1] + T * (2 * a[2] + T * (3 * a[3] + T * 4 * a[4]));
  return r;
}

ReducedThermo reduced_thermo(const SpeciesSpec& species, double T) {
  const auto& th = species.thermo;
  if (!(T >= th.t_low && T <= th.t_high)) {
    throw ThermoRangeError(species.name, T, th.t_low, th.t_high);
  }
  return reduced_thermo(th.coefficients_for(T), T);
}

void reduced_thermo_all(const Mechanism& mech, double T,
                        std::span<ReducedThermo> out) {
  const auto& species = mech.species();
  for (std::size_t i = 0; i < species.size(); ++i)
    out[i] = reduced_thermo(species[i], T);
}

ThermoProps thermo_props(const SpeciesSpec& species, double T) {
  const auto r = reduced_thermo(species, T);
  constexpr double R = constants::gas_constant;
  return {r.cp_over_r * R, r.h_over_rt * R * T, r.s_over_r * R};
}

}  // namespace chembalance::kinetics
