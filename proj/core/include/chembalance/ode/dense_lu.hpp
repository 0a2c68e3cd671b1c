#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chembalance/dense_matrix.hpp"

namespace chembalance::ode {

/// LU factors with partial pivoting, PA = LU. L (unit diagonal, implicit) and
/// U share one matrix. At elimination step k, row k was swapped with row
/// pivots[k].
struct LuFactors {
  DenseMatrix lu;
  std::vector<std::size_t> pivots;

  std::size_t size() const noexcept { return lu.size(); }
};

/// Factors `a` in place. Throws SingularMatrixError on an exact zero pivot.
void lu_factor_in_place(DenseMatrix& a, std::vector<std::size_t>& pivots);

LuFactors lu_factor(DenseMatrix a);

/// Overwrites b with the solution of A x = b.
void lu_solve_in_place(const DenseMatrix& lu,
                       std::span<const std::size_t> pivots,
                       std::span<double> b) noexcept;

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b);

}  // namespace chembalance::ode
