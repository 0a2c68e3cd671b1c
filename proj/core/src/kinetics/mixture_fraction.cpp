#include "chembalance/kinetics/mixture_fraction.hpp"

#include <algorithm>
#include <cmath>

#include "chembalance/error.hpp"

namespace chembalance::kinetics {

namespace {

// Oxygen atoms needed per atom of each element for complete oxidation
// (CO2, H2O), and -1 for oxygen itself.
double bilger_weight(std::string_view symbol) {
  if (symbol == "C") return 2.0;
  if (symbol == "H") return 0.5;
  if (symbol == "O") return -1.0;
  return 0.0;
}

}  // namespace

double bilger_beta(const Mechanism& mech, std::span<const double> full_y) {
  const auto& w = mech.molecular_weights();
  double beta = 0.0;
  for (std::size_t e = 0; e < mech.elements().size(); ++e) {
    const double weight = bilger_weight(mech.elements()[e].symbol);
    if (weight == 0.0) continue;
    // moles of element e per kg of mixture
    double moles = 0.0;
    for (std::size_t i = 0; i < full_y.size(); ++i)
      moles += mech.atoms(e, i) * full_y[i] / w[i];
    beta += weight * moles;
  }
  return beta;
}

double bilger_z(const Mechanism& mech, std::span<const double> full_y) {
  const double b_fuel = bilger_beta(mech, mech.fuel_stream());
  const double b_ox = bilger_beta(mech, mech.oxidizer_stream());
  if (b_fuel == b_ox) {
    throw DegenerateStreamsError(
        "fuel and oxidizer streams have equal Bilger coupling functions");
  }
  const double z = (bilger_beta(mech, full_y) - b_ox) / (b_fuel - b_ox);
  return std::clamp(z, 0.0, 1.0);
}

double stoichiometric_z(const Mechanism& mech) {
  const double b_fuel = bilger_beta(mech, mech.fuel_stream());
  const double b_ox = bilger_beta(mech, mech.oxidizer_stream());
  if (b_fuel == b_ox) {
    throw DegenerateStreamsError(
        "fuel and oxidizer streams have equal Bilger coupling functions");
  }
  return -b_ox / (b_fuel - b_ox);
}

std::vector<double> blend_streams(const Mechanism& mech, double z) {
  const auto& f = mech.fuel_stream();
  const auto& o = mech.oxidizer_stream();
  std::vector<double> y(f.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = z * f[i] + (1.0 - z) * o[i];
  return y;
}

}  // namespace chembalance::kinetics
