#include "chembalance/ode/dense_lu.hpp"

#include <cmath>
#include <utility>

#include "chembalance/error.hpp"

namespace chembalance::ode {

void lu_factor_in_place(DenseMatrix& a, std::vector<std::size_t>& pivots) {
  const std::size_t n = a.size();
  pivots.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    pivots[k] = p;
    if (best == 0.0) throw SingularMatrixError(k);
    if (p != k) {
      auto rk = a.row(k);
      auto rp = a.row(p);
      for (std::size_t j = 0; j < n; ++j) std::swap(rk[j], rp[j]);
    }
    const double inv = 1.0 / a(k, k);
    const auto rk = a.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = a.row(i);
      const double l = ri[k] * inv;
      ri[k] = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
    }
  }
}

LuFactors lu_factor(DenseMatrix a) {
  LuFactors f{std::move(a), {}};
  lu_factor_in_place(f.lu, f.pivots);
  return f;
}

void lu_solve_in_place(const DenseMatrix& lu,
                       std::span<const std::size_t> pivots,
                       std::span<double> b) noexcept {
  const std::size_t n = lu.size();
  for (std::size_t k = 0; k < n; ++k)
    if (pivots[k] != k) std::swap(b[k], b[pivots[k]]);
  // forward: L y = Pb
  for (std::size_t i = 1; i < n; ++i) {
    const auto ri = lu.row(i);
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= ri[j] * b[j];
    b[i] = s;
  }
  // back: U x = y
  for (std::size_t i = n; i-- > 0;) {
    const auto ri = lu.row(i);
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= ri[j] * b[j];
    b[i] = s / ri[i];
  }
}

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b) {
  std::vector<double> x(b.begin(), b.end());
  lu_solve_in_place(f.lu, f.pivots, x);
  return x;
}

}  // namespace chembalance::ode
