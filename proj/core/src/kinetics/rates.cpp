#include "chembalance/kinetics/rates.hpp"

#include <cmath>

#include "chembalance/constants.hpp"
#include "chembalance/error.hpp"
#include "chembalance/kinetics/reactor.hpp"
#include "chembalance/kinetics/thermo.hpp"

namespace chembalance::kinetics {

double rate_constant(const ReactionSpec& r, double T) {
  return r.pre_exponential * std::pow(T, r.temperature_exponent) *
         std::exp(-r.activation_temperature / T);
}

double equilibrium_constant(const Mechanism& mech, const ReactionSpec& r,
                            double T) {
  double minus_ln_kp = 0.0;
  auto accumulate = [&](const std::vector<StoichTerm>& terms, double sign) {
    for (const auto& t : terms) {
      const auto th = reduced_thermo(mech.species()[t.species], T);
      minus_ln_kp += sign * t.coefficient * (th.h_over_rt - th.s_over_r);
    }
  };
  accumulate(r.products, 1.0);
  accumulate(r.reactants, -1.0);
  const double c_ref = constants::one_atm / (constants::gas_constant * T) /
                       constants::kmol_m3_per_mol_cm3;
  return std::exp(-minus_ln_kp) * std::pow(c_ref, r.delta_nu());
}

double reverse_rate_constant(const Mechanism& mech, const ReactionSpec& r,
                             double T, double k_forward) {
  if (!r.reversible) {
    throw Error("reverse rate requested for irreversible reaction '" +
                r.equation + "'");
  }
  return k_forward / equilibrium_constant(mech, r, T);
}

std::vector<double> concentrations(const Mechanism& mech,
                                   const CompositionVector& phi, double p) {
  const auto y = phi.full_mass_fractions();
  const auto& w = mech.molecular_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] / w[i];
  const double rho = p / (constants::gas_constant * phi.temperature * s);
  std::vector<double> c(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    c[i] = rho * std::max(y[i], 0.0) / w[i] / constants::kmol_m3_per_mol_cm3;
  return c;
}

std::vector<double> production_rates(const Mechanism& mech,
                                     const CompositionVector& phi, double p) {
  ConstantPressureReactor reactor(mech, p);
  std::vector<double> wdot(mech.n_species());
  reactor.production_rates(phi.to_state(), wdot);
  return wdot;
}

}  // namespace chembalance::kinetics
