#include "chembalance/kinetics/composition.hpp"

#include <cmath>

namespace chembalance::kinetics {

double CompositionVector::implied_mass_fraction() const noexcept {
  double sum = 0.0;
  for (double y : mass_fractions) sum += y;
  return 1.0 - sum;
}

std::vector<double> CompositionVector::full_mass_fractions() const {
  std::vector<double> full(mass_fractions);
  full.push_back(implied_mass_fraction());
  return full;
}

std::vector<double> CompositionVector::to_state() const {
  std::vector<double> s;
  s.reserve(state_size());
  s.push_back(temperature);
  s.insert(s.end(), mass_fractions.begin(), mass_fractions.end());
  return s;
}

CompositionVector CompositionVector::from_state(std::span<const double> state) {
  CompositionVector phi;
  phi.temperature = state[0];
  phi.mass_fractions.assign(state.begin() + 1, state.end());
  return phi;
}

CompositionVector CompositionVector::from_full(double T,
                                               std::span<const double> full_y) {
  CompositionVector phi;
  phi.temperature = T;
  phi.mass_fractions.assign(full_y.begin(), full_y.end() - 1);
  return phi;
}

bool CompositionVector::is_valid(double tol) const noexcept {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) return false;
  for (double y : mass_fractions)
    if (!(y >= 0.0 && y <= 1.0)) return false;
  const double implied = implied_mass_fraction();
  return implied >= -tol && implied <= 1.0 + tol;
}

}  // namespace chembalance::kinetics
