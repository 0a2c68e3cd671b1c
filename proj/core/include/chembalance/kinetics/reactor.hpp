#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "chembalance/dense_matrix.hpp"
#include "chembalance/kinetics/composition.hpp"
#include "chembalance/kinetics/mechanism.hpp"
#include "chembalance/kinetics/thermo.hpp"

namespace chembalance::kinetics {

/// Adiabatic constant-pressure reactor over the state (T, Y_1..Y_{N-1}).
///
/// Holds scratch buffers so repeated evaluations do not allocate; one instance
/// per caller. The mechanism is borrowed and must outlive the reactor.
class ConstantPressureReactor {
 public:
  ConstantPressureReactor(const Mechanism& mech, double pressure);

  std::size_t size() const noexcept { return mech_->state_size(); }
  double pressure() const noexcept { return pressure_; }
  const Mechanism& mechanism() const noexcept { return *mech_; }

  /// dphi/dt. Throws ThermoRangeError if T leaves the thermo range.
  void rhs(std::span<const double> state, std::span<double> dstate);

  /// Exact d(rhs)/d(state), including the chain through density, heat
  /// capacity, rate constants and the implied last mass fraction.
  void jacobian(std::span<const double> state, DenseMatrix& jac);

  /// Net production rates (mol/(cm^3 s)) for the state, all N species.
  void production_rates(std::span<const double> state, std::span<double> wdot);

 private:
  void evaluate_mixture(std::span<const double> state);
  void evaluate_progress(bool with_derivatives);

  const Mechanism* mech_;
  double pressure_;

  // mixture scratch
  double temperature_ = 0.0;
  double inv_mean_weight_ = 0.0;  // S = sum Y_i / W_i
  double density_ = 0.0;          // kg/m^3
  double total_conc_ = 0.0;       // mol/cm^3
  std::vector<double> y_;         // full mass fractions
  std::vector<double> conc_;      // clipped, mol/cm^3
  std::vector<ReducedThermo> thermo_;

  // per-reaction scratch
  std::vector<double> kf_, kr_, dlnkf_dt_, dlnkr_dt_, q_;
  std::vector<double> wdot_;
  std::vector<double> dq_dc_;   // reactions x species
  std::vector<double> dq_dt_c_; // at constant concentrations
  std::vector<double> dwdot_dt_;
  std::vector<double> dwdot_dy_;  // species x species (full Y)
  std::vector<double> scratch_, scratch2_;
};

std::vector<double> rhs(const Mechanism& mech, const CompositionVector& phi,
                        double p);

DenseMatrix analytical_jacobian(const Mechanism& mech,
                                const CompositionVector& phi, double p);

/// Central-difference Jacobian of an arbitrary right-hand side.
///
/// Component j is perturbed by max(eta |y_j|, floor). Costs exactly 2n calls
/// of `f`.
template <typename Rhs>
DenseMatrix fd_jacobian(Rhs&& f, std::span<const double> y, double eta,
                        double floor) {
  const std::size_t n = y.size();
  DenseMatrix jac(n);
  std::vector<double> work(y.begin(), y.end());
  std::vector<double> fp(n), fm(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double step = std::max(eta * std::abs(y[j]), floor);
    work[j] = y[j] + step;
    const double up = work[j];
    f(std::span<const double>(work), std::span<double>(fp));
    work[j] = y[j] - step;
    const double down = work[j];
    f(std::span<const double>(work), std::span<double>(fm));
    work[j] = y[j];
    const double inv = 1.0 / (up - down);
    for (std::size_t i = 0; i < n; ++i) jac(i, j) = (fp[i] - fm[i]) * inv;
  }
  return jac;
}

inline constexpr double default_fd_eta = 1e-6;
inline constexpr double default_fd_floor = 1e-8;

/// Finite-difference Jacobian of the reactor right-hand side.
/// If `rhs_counter` is non-null it is incremented once per rhs evaluation.
DenseMatrix fd_jacobian(const Mechanism& mech, const CompositionVector& phi,
                        double p, double eta = default_fd_eta,
                        double floor = default_fd_floor,
                        std::size_t* rhs_counter = nullptr);

}  // namespace chembalance::kinetics
