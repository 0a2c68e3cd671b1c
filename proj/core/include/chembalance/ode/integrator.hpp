#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <exception>
#include <span>
#include <string_view>
#include <vector>

#include "chembalance/cpu_timer.hpp"
#include "chembalance/dense_matrix.hpp"
#include "chembalance/error.hpp"
#include "chembalance/kinetics/composition.hpp"
#include "chembalance/kinetics/mechanism.hpp"
#include "chembalance/kinetics/reactor.hpp"
#include "chembalance/ode/dense_lu.hpp"

namespace chembalance::ode {

struct ToleranceSpec {
  double abstol = 1e-8;
  double reltol = 1e-5;
};

struct IntegratorStats {
  long steps_accepted = 0;
  long steps_rejected = 0;
  long rhs_evals = 0;
  long jacobian_evals = 0;
  long lu_factorizations = 0;
  double cpu_time = 0.0;  // seconds

  IntegratorStats& operator+=(const IntegratorStats& o) noexcept {
    steps_accepted += o.steps_accepted;
    steps_rejected += o.steps_rejected;
    rhs_evals += o.rhs_evals;
    jacobian_evals += o.jacobian_evals;
    lu_factorizations += o.lu_factorizations;
    cpu_time += o.cpu_time;
    return *this;
  }
};

enum class JacobianMode { analytical, finite_difference };

std::string_view to_string(JacobianMode mode) noexcept;

/// sqrt(mean((err_i / (abstol + reltol |ref_i|))^2))
double wrms_norm(std::span<const double> err, std::span<const double> ref,
                 const ToleranceSpec& tol) noexcept;

/// A right-hand side plus Jacobian. `jacobian` returns the number of extra
/// rhs evaluations it spent (zero for an exact Jacobian).
template <typename S>
concept OdeSystem = requires(S& s, std::span<const double> y,
                             std::span<double> f, DenseMatrix& jac) {
  { s.size() } -> std::convertible_to<std::size_t>;
  s.rhs(y, f);
  { s.jacobian(y, jac) } -> std::convertible_to<std::size_t>;
};

/// Coefficients of the 6-stage, order 4(3) stiffly accurate L-stable
/// Rosenbrock method RODAS (Hairer & Wanner), in the transformed form with
/// stage unknowns k_i = (gamma h) * (stage increment).
///
///   (I/(gamma h) - J) k_i = f(y + sum_j a_ij k_j) + sum_j c_ij k_j / h
///
/// The stage-6 argument equals the embedded 3rd-order solution; adding k_6
/// gives the 4th-order solution, so k_6 is also the error estimate.
struct RodasTableau {
  static constexpr double gamma = 0.25;
  static constexpr std::array<std::array<double, 5>, 6> a{{
      {0.0, 0.0, 0.0, 0.0, 0.0},
      {1.544, 0.0, 0.0, 0.0, 0.0},
      {0.9466785280815826, 0.2557011698983284, 0.0, 0.0, 0.0},
      {3.314825187068521, 2.896124015972201, 0.9986419139977817, 0.0, 0.0},
      {1.221224509226641, 6.019134481288629, 12.53708332932087,
       -0.6878860361058950, 0.0},
      {1.221224509226641, 6.019134481288629, 12.53708332932087,
       -0.6878860361058950, 1.0},
  }};
  static constexpr std::array<std::array<double, 5>, 6> c{{
      {0.0, 0.0, 0.0, 0.0, 0.0},
      {-5.6688, 0.0, 0.0, 0.0, 0.0},
      {-2.430093356833875, -0.2063599157091915, 0.0, 0.0, 0.0},
      {-0.1073529058151375, -9.594562251023355, -20.47028614809616, 0.0, 0.0},
      {7.496443313967647, -10.24680431464352, -33.99990352819905,
       11.70890893206160, 0.0},
      {8.083246795921522, -7.981132988064893, -31.52159432874371,
       16.31930543123136, -6.058818238834054},
  }};
};

struct StepResult {
  std::vector<double> y;
  std::vector<double> error;
  double error_norm = 0.0;
  bool failed = false;  // singular stage matrix or non-finite/out-of-range stage
  IntegratorStats stats;
};

/// Workspace for repeated Rosenbrock attempts from one base point. The rhs and
/// Jacobian at the base point are evaluated once by `prepare`; each `attempt`
/// factors (I/(gamma h) - J) exactly once.
template <OdeSystem System>
class RosenbrockStepper {
 public:
  explicit RosenbrockStepper(System& system)
      : sys_(&system),
        n_(system.size()),
        f0_(n_),
        fu_(n_),
        u_(n_),
        k_(6, std::vector<double>(n_)),
        jac_(n_),
        matrix_(n_),
        pivots_(n_) {}

  /// Evaluates f and J at y. Returns false if evaluation failed.
  bool prepare(std::span<const double> y, IntegratorStats& stats) {
    y0_.assign(y.begin(), y.end());
    try {
      stats.rhs_evals += 1;
      sys_->rhs(y0_, f0_);
      stats.rhs_evals += static_cast<long>(sys_->jacobian(y0_, jac_));
      stats.jacobian_evals += 1;
    } catch (const ThermoRangeError&) {
      return false;
    }
    stationary_ = std::all_of(f0_.begin(), f0_.end(),
                              [](double v) { return v == 0.0; });
    return true;
  }

  /// True if f vanished identically at the base point.
  bool stationary() const noexcept { return stationary_; }
  std::span<const double> base() const noexcept { return y0_; }

  /// One step of size h from the prepared base point. On success writes the
  /// new state and the error estimate; returns false on failure.
  bool attempt(double h, std::span<double> y_new, std::span<double> err,
               IntegratorStats& stats) {
    using T = RodasTableau;
    const double diag = 1.0 / (T::gamma * h);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        matrix_(i, j) = (i == j ? diag : 0.0) - jac_(i, j);
    stats.lu_factorizations += 1;
    try {
      lu_factor_in_place(matrix_, pivots_);
    } catch (const SingularMatrixError&) {
      return false;
    }

    const double inv_h = 1.0 / h;
    try {
      for (std::size_t s = 0; s < 6; ++s) {
        auto& ks = k_[s];
        if (s == 0) {
          std::copy(f0_.begin(), f0_.end(), ks.begin());
        } else {
          for (std::size_t i = 0; i < n_; ++i) {
            double v = y0_[i];
            for (std::size_t j = 0; j < s; ++j) v += T::a[s][j] * k_[j][i];
            u_[i] = v;
          }
          stats.rhs_evals += 1;
          sys_->rhs(u_, fu_);
          for (std::size_t i = 0; i < n_; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < s; ++j) v += T::c[s][j] * k_[j][i];
            ks[i] = fu_[i] + v * inv_h;
          }
        }
        lu_solve_in_place(matrix_, pivots_, ks);
      }
    } catch (const ThermoRangeError&) {
      return false;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      y_new[i] = u_[i] + k_[5][i];
      err[i] = k_[5][i];
      if (!std::isfinite(y_new[i]) || !std::isfinite(err[i])) return false;
    }
    return true;
  }

 private:
  System* sys_;
  std::size_t n_;
  std::vector<double> y0_, f0_, fu_, u_;
  std::vector<std::vector<double>> k_;
  DenseMatrix jac_, matrix_;
  std::vector<std::size_t> pivots_;
  bool stationary_ = false;
};

/// Per-step error weights use max(|y_old|, |y_new|).
inline double step_error_norm(std::span<const double> y_old,
                              std::span<const double> y_new,
                              std::span<const double> err,
                              const ToleranceSpec& tol) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double ref = std::max(std::abs(y_old[i]), std::abs(y_new[i]));
    const double w = err[i] / (tol.abstol + tol.reltol * ref);
    sum += w * w;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

/// A single Rosenbrock step of size h from y (evaluates f and J at y).
template <OdeSystem System>
StepResult rosenbrock_step(System& system, std::span<const double> y, double h,
                           const ToleranceSpec& tol) {
  RosenbrockStepper<System> stepper(system);
  StepResult result;
  result.y.resize(y.size());
  result.error.resize(y.size());
  if (!stepper.prepare(y, result.stats) ||
      !stepper.attempt(h, result.y, result.error, result.stats)) {
    result.failed = true;
    result.stats.steps_rejected = 1;
    return result;
  }
  result.error_norm = step_error_norm(y, result.y, result.error, tol);
  if (result.error_norm <= 1.0) {
    result.stats.steps_accepted = 1;
  } else {
    result.stats.steps_rejected = 1;
  }
  return result;
}

struct StepControl {
  double initial_step = 1e-7;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
  double underflow_fraction = 1e-15;
};

struct IntegrationResult {
  std::vector<double> y;
  IntegratorStats stats;
};

/// Adaptive integration of an autonomous system from t = 0 to t_end.
///
/// Accepts a step when the WRMS error is <= 1 and rescales h by
/// min(5, max(0.2, 0.9 err^-1/4)). The last step lands exactly on t_end. At a
/// base point where f is identically zero the solution is constant, so the
/// remaining interval is taken in one step.
template <OdeSystem System>
IntegrationResult integrate_system(System& system, std::span<const double> y0,
                                   double t_end, const ToleranceSpec& tol,
                                   const StepControl& control = {}) {
  if (!(t_end > 0.0)) throw Error("integration interval must be positive");
  ThreadCpuTimer timer;
  const std::size_t n = system.size();
  IntegrationResult out;
  out.y.assign(y0.begin(), y0.end());
  std::vector<double> y_new(n), err(n);
  RosenbrockStepper<System> stepper(system);
  auto& stats = out.stats;

  double t = 0.0;
  double h = std::min(control.initial_step, t_end);
  const double h_min = control.underflow_fraction * t_end;
  bool prepared = stepper.prepare(out.y, stats);
  if (!prepared) {
    throw StiffnessFailure("right-hand side cannot be evaluated at the initial state",
                           t, h, out.y);
  }

  while (t < t_end) {
    if (stepper.stationary()) h = t_end - t;
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }

    const bool ok = stepper.attempt(h, y_new, err, stats);
    double err_norm = ok ? step_error_norm(out.y, y_new, err, tol) : 0.0;
    if (!ok || !std::isfinite(err_norm)) {
      ++stats.steps_rejected;
      h *= 0.5;
      if (h < h_min) {
        throw StiffnessFailure("step size underflow after failed step", t, h, out.y);
      }
      continue;
    }

    const double factor =
        err_norm == 0.0
            ? control.max_factor
            : std::clamp(control.safety * std::pow(err_norm, -0.25),
                         control.min_factor, control.max_factor);
    if (err_norm <= 1.0) {
      ++stats.steps_accepted;
      t = last ? t_end : t + h;
      out.y.swap(y_new);
      h *= factor;
      if (t < t_end && !stepper.prepare(out.y, stats)) {
        throw StiffnessFailure("right-hand side cannot be evaluated after an accepted step",
                               t, h, out.y);
      }
    } else {
      ++stats.steps_rejected;
      h *= factor;
      if (h < h_min) {
        throw StiffnessFailure("step size underflow", t, h, out.y);
      }
    }
  }
  stats.cpu_time = timer.elapsed();
  return out;
}

/// The reactor as an OdeSystem with a selectable Jacobian source.
class ChemistrySystem {
 public:
  ChemistrySystem(const kinetics::Mechanism& mech, double p, JacobianMode mode,
                  double fd_floor);

  std::size_t size() const noexcept { return reactor_.size(); }
  void rhs(std::span<const double> y, std::span<double> f) { reactor_.rhs(y, f); }
  std::size_t jacobian(std::span<const double> y, DenseMatrix& jac);

 private:
  kinetics::ConstantPressureReactor reactor_;
  JacobianMode mode_;
  double fd_floor_;
};

struct ChemistryResult {
  kinetics::CompositionVector state;
  IntegratorStats stats;
};

/// Advances one cell's composition over dt at constant pressure.
///
/// Pure: identical arguments give bit-identical states on any thread. In
/// finite-difference mode the per-component perturbation is
/// max(eta |phi_j|, eta abstol) with eta = kinetics::default_fd_eta.
ChemistryResult integrate(const kinetics::Mechanism& mech,
                          const kinetics::CompositionVector& phi0, double p,
                          double dt, const ToleranceSpec& tol,
                          JacobianMode mode);

}  // namespace chembalance::ode
