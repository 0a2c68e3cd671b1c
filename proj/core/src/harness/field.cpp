#include "chembalance/harness/field.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chembalance/error.hpp"
#include "chembalance/kinetics/mixture_fraction.hpp"

namespace chembalance::harness {

FieldState init_shear_layer(const kinetics::Mechanism& mech, const ShearLayerParams& params,
                            int nx, int ny) {
  if (nx < 1 || ny < 1) throw ConfigError("grid dimensions must be positive");
  if (!(params.length > 0.0) || !(params.width_fraction > 0.0)) {
    throw ConfigError("domain length and layer width must be positive");
  }
  FieldState field;
  field.nx = nx;
  field.ny = ny;
  field.length = params.length;
  field.pressure = params.pressure;
  field.cells.resize(static_cast<std::size_t>(nx) * ny);

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double delta = params.width_fraction * params.length;
  const double mid = 0.5 * params.length;
  for (int ix = 0; ix < nx; ++ix) {
    const double s = (field.x_center(ix) - mid) / delta;
    const double z = 0.5 * (1.0 + std::tanh(s));
    const double temperature =
        params.t_base + (params.t_peak - params.t_base) * std::exp(-s * s);
    const auto full_y = kinetics::blend_streams(mech, z);
    const auto phi = kinetics::CompositionVector::from_full(temperature, full_y);
    for (int iy = 0; iy < ny; ++iy) {
      auto& cell = field.cells[field.index(ix, iy)];
      cell = phi;
      if (params.t_noise > 0.0) cell.temperature += params.t_noise * noise(rng);
    }
  }
  refresh_mixture_fraction(field, mech);
  return field;
}

void refresh_mixture_fraction(FieldState& field, const kinetics::Mechanism& mech) {
  field.z.resize(field.cells.size());
  for (std::size_t i = 0; i < field.cells.size(); ++i) {
    field.z[i] = kinetics::bilger_z(mech, field.cells[i].full_mass_fractions());
  }
}

namespace {

// One explicit diffusion update of a cell-ordered scalar.
void diffuse(const std::vector<double>& u, std::vector<double>& out, int nx, int ny,
             double rx, double ry) {
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      const std::size_t c = static_cast<std::size_t>(ix) * ny + iy;
      const double uc = u[c];
      double flux_x = 0.0;
      double flux_y = 0.0;
      if (ix > 0) flux_x += u[c - ny] - uc;
      if (ix + 1 < nx) flux_x += u[c + ny] - uc;
      if (iy > 0) flux_y += u[c - 1] - uc;
      if (iy + 1 < ny) flux_y += u[c + 1] - uc;
      out[c] = uc + rx * flux_x + ry * flux_y;
    }
  }
}

}  // namespace

int mixing_step(FieldState& field, const kinetics::Mechanism& mech, double diffusivity,
                double dt) {
  if (diffusivity < 0.0 || dt < 0.0) throw Error("mixing_step: negative D or dt");
  if (diffusivity == 0.0 || dt == 0.0 || field.cells.empty()) {
    refresh_mixture_fraction(field, mech);
    return 0;
  }
  const double h = std::min(field.dx(), field.dy());
  const int substeps =
      std::max(1, static_cast<int>(std::ceil(diffusivity * dt / (0.25 * h * h))));
  const double sub_dt = dt / substeps;
  const double rx = diffusivity * sub_dt / (field.dx() * field.dx());
  const double ry = diffusivity * sub_dt / (field.dy() * field.dy());

  const std::size_t n = field.cells.size();
  const std::size_t m = field.cells.front().mass_fractions.size();
  std::vector<double> u(n), out(n);
  auto run = [&](auto get) {
    for (std::size_t c = 0; c < n; ++c) u[c] = get(field.cells[c]);
    for (int s = 0; s < substeps; ++s) {
      diffuse(u, out, field.nx, field.ny, rx, ry);
      u.swap(out);
    }
    for (std::size_t c = 0; c < n; ++c) get(field.cells[c]) = u[c];
  };
  run([](kinetics::CompositionVector& cell) -> double& { return cell.temperature; });
  for (std::size_t k = 0; k < m; ++k) {
    run([k](kinetics::CompositionVector& cell) -> double& { return cell.mass_fractions[k]; });
  }
  refresh_mixture_fraction(field, mech);
  return substeps;
}

}  // namespace chembalance::harness
