#include <doctest.h>

#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include "chembalance/constants.hpp"
#include "chembalance/error.hpp"
#include "chembalance/kinetics/mechanism.hpp"
#include "chembalance/kinetics/mixture_fraction.hpp"
#include "chembalance/ode/integrator.hpp"
#include "oracles.hpp"

using namespace chembalance;
using namespace chembalance::kinetics;
using namespace chembalance::ode;

namespace {

const Mechanism& h2() {
  static const Mechanism mech = load_mechanism(fixture::data_path("h2o2.mech"));
  return mech;
}

CompositionVector stoich(double T) {
  const auto& m = h2();
  return CompositionVector::from_full(T, blend_streams(m, stoichiometric_z(m)));
}

struct ScalarLinear {
  double lambda;
  std::size_t size() const { return 1; }
  void rhs(std::span<const double> y, std::span<double> f) { f[0] = lambda * y[0]; }
  std::size_t jacobian(std::span<const double>, DenseMatrix& j) {
    j(0, 0) = lambda;
    return 0;
  }
};

struct Zero {
  std::size_t size() const { return 3; }
  void rhs(std::span<const double>, std::span<double> f) { std::fill(f.begin(), f.end(), 0.0); }
  std::size_t jacobian(std::span<const double>, DenseMatrix& j) {
    j.fill(0.0);
    return 0;
  }
};

// y' = -lambda (y - cos t), with t carried as a second state.
struct Relaxation {
  double lambda;
  std::size_t size() const { return 2; }
  void rhs(std::span<const double> y, std::span<double> f) {
    f[0] = -lambda * (y[0] - std::cos(y[1]));
    f[1] = 1.0;
  }
  std::size_t jacobian(std::span<const double> y, DenseMatrix& j) {
    j(0, 0) = -lambda;
    j(0, 1) = -lambda * std::sin(y[1]);
    j(1, 0) = 0.0;
    j(1, 1) = 0.0;
    return 0;
  }
};

// y' = -y^2, y(0) = 1, exact y = 1 / (1 + t).
struct Riccati {
  std::size_t size() const { return 1; }
  void rhs(std::span<const double> y, std::span<double> f) { f[0] = -y[0] * y[0]; }
  std::size_t jacobian(std::span<const double> y, DenseMatrix& j) {
    j(0, 0) = -2.0 * y[0];
    return 0;
  }
};

// Counts calls made by the integrator itself; FD Jacobian work happens inside.
struct CountingSystem {
  ChemistrySystem inner;
  long direct_calls = 0;
  long jacobian_calls = 0;
  std::size_t size() const { return inner.size(); }
  void rhs(std::span<const double> y, std::span<double> f) {
    ++direct_calls;
    inner.rhs(y, f);
  }
  std::size_t jacobian(std::span<const double> y, DenseMatrix& j) {
    ++jacobian_calls;
    return inner.jacobian(y, j);
  }
};

Mechanism chain_mechanism() {
  return parse_mechanism(fixture::isomer_mechanism(
      {"A", "B", "C"}, "A => B 2.0 0 0\nB => C 0.5 0 0", "A:1", "C:1"));
}

double chain_error(const CompositionVector& phi, double t) {
  const auto exact = oracle::linear_chain(2.0, 0.5, 1.0, t);
  return std::max(std::abs(phi.mass_fractions[0] - exact.a),
                  std::abs(phi.mass_fractions[1] - exact.b));
}

std::vector<double> element_mass_fractions(const Mechanism& m, const CompositionVector& phi) {
  const auto y = phi.full_mass_fractions();
  std::vector<double> z(m.elements().size(), 0.0);
  for (std::size_t e = 0; e < z.size(); ++e)
    for (std::size_t i = 0; i < y.size(); ++i)
      z[e] += m.atoms(e, i) * m.elements()[e].atomic_weight * y[i] / m.molecular_weights()[i];
  return z;
}

}  // namespace

TEST_SUITE("integrator") {
  TEST_CASE("weighted RMS norm") {
    const ToleranceSpec tol{1e-8, 1e-5};
    const std::vector<double> zero(4, 0.0);
    const std::vector<double> at_tol(4, 1e-8);
    CHECK(wrms_norm(at_tol, zero, tol) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(wrms_norm(zero, zero, tol) == 0.0);
    const std::vector<double> err{2e-8, 0.0};
    const std::vector<double> ref{0.0, 0.0};
    CHECK(wrms_norm(err, ref, tol) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }

  TEST_CASE("stationary system leaves the state unchanged") {
    Zero sys;
    const std::vector<double> y{1.0, -2.0, 3.0};
    const auto r = rosenbrock_step(sys, std::span<const double>(y), 0.1, {});
    CHECK_FALSE(r.failed);
    CHECK(r.y == y);
    CHECK(r.error_norm == 0.0);
  }

  TEST_CASE("one step reproduces the stability function") {
    using T = RodasTableau;
    for (double z : {-1e6, -1e3, -10.0, -1.0, -0.1, 0.5, 2.0}) {
      ScalarLinear sys{z};
      const std::vector<double> y{1.0};
      const auto r = rosenbrock_step(sys, std::span<const double>(y), 1.0, {});
      const double expect = oracle::rosenbrock_stability(z, T::gamma, T::a, T::c);
      CHECK(std::abs(r.y[0] - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
  }

  TEST_CASE("stiff relaxation step is accepted where explicit RK4 diverges") {
    Relaxation sys{1e6};
    const std::vector<double> y{1.0, 0.0};
    const auto r = rosenbrock_step(sys, std::span<const double>(y), 0.1, {1e-8, 1e-5});
    CHECK_FALSE(r.failed);
    CHECK(r.error_norm <= 1.0);
    CHECK(std::abs(r.y[0] - std::cos(0.1)) < 1e-4);
    const double explicit_y = oracle::rk4_relaxation_step(1e6, 0.0, 1.0, 0.1);
    CHECK(std::abs(explicit_y) > 1e6);
  }

  TEST_CASE("fixed-step convergence is fourth order") {
    std::vector<double> log_h, log_e;
    double h = 0.1;
    for (int level = 0; level < 5; ++level, h *= 0.5) {
      Riccati sys;
      std::vector<double> y{1.0};
      const int steps = static_cast<int>(std::lround(1.0 / h));
      for (int s = 0; s < steps; ++s) y = rosenbrock_step(sys, std::span<const double>(y), h, {}).y;
      log_h.push_back(std::log(h));
      log_e.push_back(std::log(std::abs(y[0] - 0.5)));
    }
    const double n = static_cast<double>(log_h.size());
    const double mx = std::accumulate(log_h.begin(), log_h.end(), 0.0) / n;
    const double my = std::accumulate(log_e.begin(), log_e.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
      sxy += (log_h[i] - mx) * (log_e[i] - my);
      sxx += (log_h[i] - mx) * (log_h[i] - mx);
    }
    const double slope = sxy / sxx;
    CHECK(slope >= 3.5);
    CHECK(slope <= 4.5);
  }

  TEST_CASE("zero-reaction mechanism takes one accepted step") {
    const auto mech = parse_mechanism(fixture::isomer_mechanism({"A", "B"}, "", "A:1", "B:1"));
    const CompositionVector phi{1000.0, {0.25}};
    for (auto mode : {JacobianMode::analytical, JacobianMode::finite_difference}) {
      const auto r = integrate(mech, phi, constants::one_atm, 0.37, {}, mode);
      CHECK(r.state == phi);
      CHECK(r.stats.steps_accepted == 1);
      CHECK(r.stats.steps_rejected == 0);
    }
  }

  TEST_CASE("linear chain matches the closed form") {
    const auto mech = chain_mechanism();
    const ToleranceSpec tol{1e-8, 1e-5};
    for (double t : {0.1, 1.0, 5.0}) {
      for (auto mode : {JacobianMode::analytical, JacobianMode::finite_difference}) {
        const auto r = integrate(mech, {1000.0, {1.0, 0.0}}, constants::one_atm, t, tol, mode);
        CHECK(chain_error(r.state, t) <= 10.0 * tol.reltol);
      }
    }
  }

  TEST_CASE("tighter tolerances never increase the linear-chain error") {
    const auto mech = chain_mechanism();
    double previous = INFINITY;
    for (int k = 0; k < 6; ++k) {
      const double scale = std::pow(10.0, -k);
      const ToleranceSpec tol{1e-6 * scale, 1e-3 * scale};
      const auto r = integrate(mech, {1000.0, {1.0, 0.0}}, constants::one_atm, 2.0, tol,
                               JacobianMode::analytical);
      const double err = chain_error(r.state, 2.0);
      CHECK(err <= previous);
      previous = err;
    }
  }

  TEST_CASE("hydrogen ignition: analytical and finite-difference modes agree") {
    const ToleranceSpec tol{1e-8, 1e-5};
    const auto a = integrate(h2(), stoich(1200.0), constants::one_atm, 1e-4, tol,
                             JacobianMode::analytical);
    const auto f = integrate(h2(), stoich(1200.0), constants::one_atm, 1e-4, tol,
                             JacobianMode::finite_difference);
    CHECK(a.state.temperature > 1500.0);
    CHECK(std::abs(a.state.temperature - f.state.temperature) <=
          10.0 * tol.reltol * a.state.temperature);
    CHECK(a.stats.rhs_evals < f.stats.rhs_evals);
  }

  TEST_CASE("element mass fractions are conserved through ignition") {
    const auto phi0 = stoich(1200.0);
    const auto r = integrate(h2(), phi0, constants::one_atm, 1e-4, {1e-8, 1e-5},
                             JacobianMode::analytical);
    const auto before = element_mass_fractions(h2(), phi0);
    const auto after = element_mass_fractions(h2(), r.state);
    for (std::size_t e = 0; e < before.size(); ++e)
      CHECK(std::abs(after[e] - before[e]) <= 1e-8 * before[e]);
    const auto full = r.state.full_mass_fractions();
    CHECK(full.back() == 1.0 - std::accumulate(r.state.mass_fractions.begin(),
                                               r.state.mass_fractions.end(), 0.0));
  }

  TEST_CASE("integration is deterministic across threads") {
    const auto phi0 = stoich(1150.0);
    const ToleranceSpec tol{1e-9, 1e-6};
    for (auto mode : {JacobianMode::analytical, JacobianMode::finite_difference}) {
      const auto here = integrate(h2(), phi0, constants::one_atm, 2e-4, tol, mode);
      ChemistryResult there;
      std::thread([&] { there = integrate(h2(), phi0, constants::one_atm, 2e-4, tol, mode); })
          .join();
      CHECK(here.state == there.state);
      CHECK(here.stats.rhs_evals == there.stats.rhs_evals);
    }
  }

  TEST_CASE("finite-difference cost is attributable by counter arithmetic") {
    const auto phi0 = stoich(1200.0).to_state();
    const ToleranceSpec tol{1e-8, 1e-5};
    const auto n = static_cast<long>(h2().state_size());
    for (auto mode : {JacobianMode::analytical, JacobianMode::finite_difference}) {
      CountingSystem sys{ChemistrySystem(h2(), constants::one_atm, mode,
                                         default_fd_eta * tol.abstol)};
      const auto r = integrate_system(sys, std::span<const double>(phi0), 1e-4, tol);
      const long fd_share = mode == JacobianMode::finite_difference ? 2 * n : 0;
      CHECK(r.stats.rhs_evals == sys.direct_calls + fd_share * r.stats.jacobian_evals);
      CHECK(r.stats.jacobian_evals == sys.jacobian_calls);
    }
  }

  TEST_CASE("state outside the thermo range raises a stiffness failure") {
    auto phi = stoich(1200.0);
    phi.temperature = 4000.0;
    try {
      integrate(h2(), phi, constants::one_atm, 1e-4, {}, JacobianMode::analytical);
      FAIL("expected StiffnessFailure");
    } catch (const StiffnessFailure& e) {
      CHECK(e.state().front() == 4000.0);
      CHECK(e.time() == 0.0);
    }
  }

  TEST_CASE("non-positive interval is rejected") {
    CHECK_THROWS_AS(integrate(h2(), stoich(1000.0), constants::one_atm, 0.0, {},
                              JacobianMode::analytical),
                    Error);
  }
}
