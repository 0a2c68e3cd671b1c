#include "chembalance/refmap/refmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chembalance/error.hpp"

namespace chembalance::refmap {

void RefMapConfig::validate() const {
  if (z_bins < 1) throw ConfigError("refmap.z_bins must be >= 1");
  if (!(eps_z >= 0.0)) throw ConfigError("refmap.eps_z must be >= 0");
  if (!(eps_t >= 0.0)) throw ConfigError("refmap.eps_t must be >= 0");
}

std::size_t ZoneAssignment::explicit_count() const noexcept {
  return static_cast<std::size_t>(
      std::count(disposition.begin(), disposition.end(), Disposition::solve_explicit));
}

int zone_index(double z, int z_bins) noexcept {
  const double scaled = std::floor(z * z_bins);
  if (!(scaled >= 0.0)) return 0;
  if (scaled >= z_bins - 1) return z_bins - 1;
  return static_cast<int>(scaled);
}

ZoneAssignment assign_zones(std::span<const CellSample> cells, const RefMapConfig& config) {
  config.validate();
  ZoneAssignment out;
  const std::size_t n = cells.size();
  out.zone.resize(n);
  out.disposition.assign(n, Disposition::solve_explicit);
  out.reference_of.resize(n);
  out.zone_reference.assign(config.z_bins, std::nullopt);

  std::vector<std::size_t> ref_index(config.z_bins, n);
  for (std::size_t i = 0; i < n; ++i) {
    const int zone = zone_index(cells[i].z, config.z_bins);
    out.zone[i] = zone;
    auto& r = ref_index[zone];
    if (r == n || cells[i].cell_id < cells[r].cell_id) r = i;
  }
  for (int zone = 0; zone < config.z_bins; ++zone) {
    if (ref_index[zone] != n) out.zone_reference[zone] = cells[ref_index[zone]].cell_id;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = ref_index[out.zone[i]];
    out.reference_of[i] = r;
    if (!config.enabled || r == i) continue;
    if (std::abs(cells[i].z - cells[r].z) <= config.eps_z &&
        std::abs(cells[i].temperature - cells[r].temperature) <= config.eps_t) {
      out.disposition[i] = Disposition::map_from_reference;
    }
  }
  return out;
}

kinetics::CompositionVector map_state(const kinetics::CompositionVector& own,
                                      const ReferenceSolution& reference) {
  if (own == reference.before) return reference.after;
  const std::size_t m = own.mass_fractions.size();
  if (reference.before.mass_fractions.size() != m ||
      reference.after.mass_fractions.size() != m) {
    throw std::logic_error("map_state: composition sizes differ");
  }
  kinetics::CompositionVector out;
  out.temperature =
      own.temperature + (reference.after.temperature - reference.before.temperature);
  out.mass_fractions.resize(m);
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double y = own.mass_fractions[k] +
                     (reference.after.mass_fractions[k] - reference.before.mass_fractions[k]);
    out.mass_fractions[k] = std::clamp(y, 0.0, 1.0);
    sum += out.mass_fractions[k];
  }
  if (sum > 1.0) {
    for (double& y : out.mass_fractions) y /= sum;
  }
  return out;
}

std::vector<kinetics::CompositionVector> apply_mapping(
    const ZoneAssignment& assignment, std::span<const CellSample> cells,
    std::span<const kinetics::CompositionVector> own_states,
    const std::map<CellId, kinetics::CompositionVector>& solved) {
  const std::size_t n = cells.size();
  if (assignment.disposition.size() != n || own_states.size() != n) {
    throw std::logic_error("apply_mapping: assignment does not match the cell set");
  }
  auto lookup = [&](CellId id) -> const kinetics::CompositionVector& {
    auto it = solved.find(id);
    if (it == solved.end()) {
      throw std::logic_error("apply_mapping: no solution for cell " + std::to_string(id));
    }
    return it->second;
  };

  std::vector<kinetics::CompositionVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (assignment.disposition[i] == Disposition::solve_explicit) {
      out.push_back(lookup(cells[i].cell_id));
    } else {
      const std::size_t r = assignment.reference_of[i];
      out.push_back(map_state(own_states[i], {own_states[r], lookup(cells[r].cell_id)}));
    }
  }
  return out;
}

}  // namespace chembalance::refmap
