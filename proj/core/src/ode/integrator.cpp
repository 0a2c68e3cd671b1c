#include "chembalance/ode/integrator.hpp"

#include "chembalance/kinetics/reactor.hpp"

namespace chembalance::ode {

std::string_view to_string(JacobianMode mode) noexcept {
  return mode == JacobianMode::analytical ? "analytical" : "finite-difference";
}

double wrms_norm(std::span<const double> err, std::span<const double> ref,
                 const ToleranceSpec& tol) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double w = err[i] / (tol.abstol + tol.reltol * std::abs(ref[i]));
    sum += w * w;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

ChemistrySystem::ChemistrySystem(const kinetics::Mechanism& mech, double p,
                                 JacobianMode mode, double fd_floor)
    : reactor_(mech, p), mode_(mode), fd_floor_(fd_floor) {}

std::size_t ChemistrySystem::jacobian(std::span<const double> y, DenseMatrix& jac) {
  if (mode_ == JacobianMode::analytical) {
    reactor_.jacobian(y, jac);
    return 0;
  }
  std::size_t calls = 0;
  jac = kinetics::fd_jacobian(
      [&](std::span<const double> u, std::span<double> f) {
        ++calls;
        reactor_.rhs(u, f);
      },
      y, kinetics::default_fd_eta, fd_floor_);
  return calls;
}

ChemistryResult integrate(const kinetics::Mechanism& mech,
                          const kinetics::CompositionVector& phi0, double p,
                          double dt, const ToleranceSpec& tol,
                          JacobianMode mode) {
  ChemistrySystem system(mech, p, mode, kinetics::default_fd_eta * tol.abstol);
  const auto y0 = phi0.to_state();
  auto result = integrate_system(system, std::span<const double>(y0), dt, tol);
  return {kinetics::CompositionVector::from_state(result.y), result.stats};
}

}  // namespace chembalance::ode
