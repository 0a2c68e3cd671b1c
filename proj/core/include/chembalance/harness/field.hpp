#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chembalance/constants.hpp"
#include "chembalance/kinetics/composition.hpp"
#include "chembalance/kinetics/mechanism.hpp"

namespace chembalance::harness {

struct ShearLayerParams {
  double length = 8e-3;          // m, square domain side
  double pressure = constants::one_atm;    // Pa
  double t_base = 800.0;         // K
  double t_peak = 1500.0;        // K
  double width_fraction = 0.05;  // delta / length
  double t_noise = 0.0;          // K, standard deviation of per-cell noise
  std::uint64_t seed = 0;
};

/// Cell (ix, iy) has id ix * ny + iy; x varies slowest.
struct FieldState {
  int nx = 0;
  int ny = 0;
  double length = 0.0;
  double pressure = 0.0;
  std::vector<kinetics::CompositionVector> cells;
  std::vector<double> z;

  std::size_t size() const noexcept { return cells.size(); }
  std::size_t index(int ix, int iy) const noexcept {
    return static_cast<std::size_t>(ix) * ny + iy;
  }
  double dx() const noexcept { return length / nx; }
  double dy() const noexcept { return length / ny; }
  double x_center(int ix) const noexcept { return (ix + 0.5) * dx(); }
  double y_center(int iy) const noexcept { return (iy + 0.5) * dy(); }
};

FieldState init_shear_layer(const kinetics::Mechanism& mech, const ShearLayerParams& params,
                            int nx, int ny);

/// Recomputes the cached mixture fraction of every cell.
void refresh_mixture_fraction(FieldState& field, const kinetics::Mechanism& mech);

/// Explicit 5-point diffusion of T and the stored mass fractions with
/// zero-gradient walls, sub-stepped so D dt / h^2 <= 0.25 per direction.
/// Returns the number of sub-steps taken.
int mixing_step(FieldState& field, const kinetics::Mechanism& mech, double diffusivity,
                double dt);

}  // namespace chembalance::harness
