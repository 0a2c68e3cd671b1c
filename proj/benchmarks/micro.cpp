#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "chembalance/balance/plan.hpp"
#include "chembalance/constants.hpp"
#include "chembalance/kinetics/mechanism.hpp"
#include "chembalance/kinetics/mixture_fraction.hpp"
#include "chembalance/kinetics/reactor.hpp"
#include "chembalance/ode/dense_lu.hpp"
#include "chembalance/ode/integrator.hpp"

using namespace chembalance;

namespace {

const kinetics::Mechanism& mechanism() {
  static const auto mech =
      kinetics::load_mechanism(CHEMBALANCE_BENCH_DATA_DIR "/h2o2.mech");
  return mech;
}

kinetics::CompositionVector hot_mixture() {
  const auto& m = mechanism();
  return kinetics::CompositionVector::from_full(
      1200.0, kinetics::blend_streams(m, kinetics::stoichiometric_z(m)));
}

void BM_Rhs(benchmark::State& state) {
  const auto phi = hot_mixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(kinetics::rhs(mechanism(), phi, constants::one_atm));
}
BENCHMARK(BM_Rhs);

void BM_AnalyticalJacobian(benchmark::State& state) {
  const auto phi = hot_mixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kinetics::analytical_jacobian(mechanism(), phi, constants::one_atm));
}
BENCHMARK(BM_AnalyticalJacobian);

void BM_FdJacobian(benchmark::State& state) {
  const auto phi = hot_mixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(kinetics::fd_jacobian(mechanism(), phi, constants::one_atm));
}
BENCHMARK(BM_FdJacobian);

void BM_LuFactor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng) + (i == j ? n : 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(ode::lu_factor(a));
}
BENCHMARK(BM_LuFactor)->Arg(9)->Arg(32)->Arg(100);

void BM_SingleCell(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? ode::JacobianMode::analytical
                                        : ode::JacobianMode::finite_difference;
  const auto phi = hot_mixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ode::integrate(mechanism(), phi, constants::one_atm, 1e-5, {1e-10, 1e-6}, mode));
}
BENCHMARK(BM_SingleCell)->ArgName("fd")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_ComputePlan(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  std::lognormal_distribution<double> cost(-7.0, 1.5);
  balance::LoadVector loads(p, 0.0);
  std::vector<std::vector<balance::CostEntry>> costs(p);
  balance::CellId next = 0;
  for (int r = 0; r < p; ++r)
    for (int i = 0; i < 512; ++i) {
      const double c = cost(rng) * (r == 0 ? 8.0 : 1.0);
      costs[r].push_back({next++, c});
      loads[r] += c;
    }
  for (auto _ : state) benchmark::DoNotOptimize(balance::compute_plan(loads, costs));
}
BENCHMARK(BM_ComputePlan)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
