#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chembalance/constants.hpp"
#include "chembalance/error.hpp"
#include "chembalance/kinetics/mechanism.hpp"
#include "chembalance/kinetics/mixture_fraction.hpp"
#include "chembalance/kinetics/reactor.hpp"
#include "chembalance/ode/integrator.hpp"
#include "oracles.hpp"

using namespace chembalance;
using namespace chembalance::kinetics;

namespace {

const Mechanism& h2() {
  static const Mechanism mech = load_mechanism(fixture::data_path("h2o2.mech"));
  return mech;
}

CompositionVector stoich(double T) {
  const auto& m = h2();
  return CompositionVector::from_full(T, blend_streams(m, stoichiometric_z(m)));
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> as_vector(const DenseMatrix& m) {
  return {m.data().begin(), m.data().end()};
}

}  // namespace

TEST_SUITE("kinetics") {
  TEST_CASE("mechanism without reactions is stationary") {
    const auto mech = parse_mechanism(fixture::isomer_mechanism({"A", "B"}, "", "A:1", "B:1"));
    const CompositionVector phi{1100.0, {0.3}};
    for (double v : rhs(mech, phi, constants::one_atm)) CHECK(v == 0.0);
    const auto jac = fd_jacobian(mech, phi, constants::one_atm);
    for (double v : jac.data()) CHECK(v == 0.0);
  }

  TEST_CASE("cold hydrogen/air is effectively frozen") {
    const auto cold = rhs(h2(), stoich(300.0), constants::one_atm);
    const auto hot = rhs(h2(), stoich(1200.0), constants::one_atm);
    CHECK(max_abs(cold) < 1e-8 * max_abs(hot));
  }

  TEST_CASE("hot hydrogen/air: endothermic initiation, then heat release") {
    // Without radicals only endothermic initiation steps can run forward.
    const auto fresh = rhs(h2(), stoich(1200.0), constants::one_atm);
    CHECK(fresh[0] < 0.0);
    CHECK(std::abs(fresh[0]) < 100.0);
    // Chain branching is endothermic too; net heating starts once radicals
    // recombine, a few microseconds into the transient.
    const auto early = ode::integrate(h2(), stoich(1200.0), constants::one_atm, 1e-5,
                                      {1e-10, 1e-7}, ode::JacobianMode::analytical);
    const auto seeded = rhs(h2(), early.state, constants::one_atm);
    CHECK(seeded[0] > 0.0);
  }

  TEST_CASE("isothermal linear chain has the rate matrix as Jacobian") {
    const double k1 = 2.0, k2 = 0.5;
    const auto mech = parse_mechanism(fixture::isomer_mechanism(
        {"A", "B", "C"}, "A => B 2.0 0 0\nB => C 0.5 0 0", "A:1", "C:1"));
    const CompositionVector phi{1000.0, {0.6, 0.3}};
    const auto d = rhs(mech, phi, constants::one_atm);
    CHECK(std::abs(d[0]) < 1e-12);
    CHECK(d[1] == doctest::Approx(-k1 * 0.6).epsilon(1e-13));
    CHECK(d[2] == doctest::Approx(k1 * 0.6 - k2 * 0.3).epsilon(1e-13));

    const auto ja = analytical_jacobian(mech, phi, constants::one_atm);
    const double expected[3][3] = {{0, 0, 0}, {0, -k1, 0}, {0, k1, -k2}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(ja(i, j) - expected[i][j]) < 1e-12);

    // Species block only: the temperature row of the difference quotient
    // carries round-off from the cancelling heat-release sum.
    const auto jf = fd_jacobian(mech, phi, constants::one_atm);
    for (int i = 1; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(jf(i, j) - expected[i][j]) < 1e-8);
  }

  TEST_CASE("spectator species column vanishes when density and heat capacity are frozen") {
    // Equal molecular weights and equal heat capacities: swapping mass between
    // the spectator S and the implied species changes neither.
    const auto mech = parse_mechanism(fixture::isomer_mechanism(
        {"A", "B", "S", "C"}, "A => B 2.0 0 0", "A:1", "C:1"));
    const CompositionVector phi{900.0, {0.4, 0.2, 0.1}};
    const auto ja = analytical_jacobian(mech, phi, constants::one_atm);
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(ja(i, 3)) < 1e-14);
  }

  TEST_CASE("analytical and finite-difference Jacobians agree on hydrogen/air") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ut(800.0, 2500.0);
    std::uniform_real_distribution<double> uy(0.0, 1.0);
    const auto& m = h2();
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> y(m.n_species());
      for (auto& v : y) v = uy(rng);
      const double s = std::accumulate(y.begin(), y.end(), 0.0);
      for (auto& v : y) v /= s;
      const auto phi = CompositionVector::from_full(ut(rng), y);
      const auto ja = analytical_jacobian(m, phi, constants::one_atm);
      const auto jf = fd_jacobian(m, phi, constants::one_atm);
      worst = std::max(worst, oracle::column_scaled_error(as_vector(ja), as_vector(jf),
                                                          m.state_size()));
    }
    CHECK(worst < 1e-5);
  }

  TEST_CASE("finite-difference Jacobian costs exactly 2N rhs evaluations") {
    std::size_t count = 0;
    fd_jacobian(h2(), stoich(1500.0), constants::one_atm, default_fd_eta, default_fd_floor,
                &count);
    CHECK(count == 2 * h2().state_size());
  }

  TEST_CASE("production rates conserve mass at the reactor level") {
    ConstantPressureReactor reactor(h2(), constants::one_atm);
    const auto state = stoich(1500.0).to_state();
    std::vector<double> wdot(h2().n_species());
    reactor.production_rates(state, wdot);
    double sum = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < wdot.size(); ++i) {
      sum += wdot[i] * h2().molecular_weights()[i];
      mag += std::abs(wdot[i] * h2().molecular_weights()[i]);
    }
    CHECK(std::abs(sum) <= 1e-10 * mag);
  }

  TEST_CASE("rhs leaving the thermo range raises") {
    CHECK_THROWS_AS(rhs(h2(), stoich(4000.0), constants::one_atm), ThermoRangeError);
  }
}

TEST_SUITE("mixture_fraction") {
  TEST_CASE("streams map to the ends of the unit interval") {
    const auto& m = h2();
    CHECK(bilger_z(m, m.fuel_stream()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bilger_z(m, m.oxidizer_stream()) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(bilger_z(m, blend_streams(m, 0.5)) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("mixture fraction is linear in composition") {
    const auto& m = h2();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const auto ya = blend_streams(m, u(rng));
      const auto yb = blend_streams(m, u(rng));
      const double alpha = u(rng);
      std::vector<double> mix(ya.size());
      for (std::size_t i = 0; i < mix.size(); ++i)
        mix[i] = alpha * ya[i] + (1.0 - alpha) * yb[i];
      const double expect = alpha * bilger_z(m, ya) + (1.0 - alpha) * bilger_z(m, yb);
      CHECK(std::abs(bilger_z(m, mix) - expect) <= 1e-12);
    }
  }

  TEST_CASE("stoichiometric hydrogen/air mixture fraction") {
    // Hand element balance: H2 fuel, air with 23.3% O2 by mass.
    const double beta_fuel = oracle::bilger_beta(0.0, 1.0, 0.0);
    const double beta_ox = oracle::bilger_beta(0.0, 0.0, 0.233);
    const double z_st = -beta_ox / (beta_fuel - beta_ox);
    CHECK(z_st == doctest::Approx(0.0285).epsilon(0.02));
    CHECK(stoichiometric_z(h2()) == doctest::Approx(z_st).epsilon(1e-10));
    CHECK(std::abs(bilger_beta(h2(), blend_streams(h2(), z_st))) < 1e-12);
  }

  TEST_CASE("oxygen-free reactive state still gives a valid mixture fraction") {
    const auto& m = h2();
    std::vector<double> y(m.n_species(), 0.0);
    y[*m.species_index("H2O")] = 0.2;
    y[*m.species_index("N2")] = 0.8;
    const double z = bilger_z(m, y);
    CHECK(z >= 0.0);
    CHECK(z <= 1.0);
  }

  TEST_CASE("identical streams are rejected") {
    const auto& m = h2();
    const auto same = m.with_streams(m.oxidizer_stream(), m.oxidizer_stream());
    CHECK_THROWS_AS(bilger_z(same, m.fuel_stream()), DegenerateStreamsError);
    CHECK_THROWS_AS(stoichiometric_z(same), DegenerateStreamsError);
  }
}
