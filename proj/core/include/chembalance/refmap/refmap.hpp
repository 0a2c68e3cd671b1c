#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "chembalance/balance/problem.hpp"
#include "chembalance/kinetics/composition.hpp"

namespace chembalance::refmap {

using balance::CellId;

struct RefMapConfig {
  int z_bins = 20;
  double eps_z = 1e-3;
  double eps_t = 10.0;  // K
  bool enabled = true;

  void validate() const;
};

enum class Disposition { solve_explicit, map_from_reference };

struct CellSample {
  CellId cell_id = 0;
  double z = 0.0;
  double temperature = 0.0;
};

struct ZoneAssignment {
  std::vector<int> zone;                   // per cell
  std::vector<Disposition> disposition;    // per cell
  std::vector<std::size_t> reference_of;   // per cell: index of its zone's reference
  std::vector<std::optional<CellId>> zone_reference;  // per zone

  std::size_t explicit_count() const noexcept;
  std::size_t mapped_count() const noexcept { return disposition.size() - explicit_count(); }
};

int zone_index(double z, int z_bins) noexcept;

/// Worker-local zoning. When the config is disabled every cell is explicit.
ZoneAssignment assign_zones(std::span<const CellSample> cells, const RefMapConfig& config);

struct ReferenceSolution {
  kinetics::CompositionVector before;
  kinetics::CompositionVector after;
};

/// own + (after - before), stored mass fractions clipped to [0, 1] and
/// rescaled if their sum exceeds 1. A state equal to `before` yields `after`.
kinetics::CompositionVector map_state(const kinetics::CompositionVector& own,
                                      const ReferenceSolution& reference);

/// New states for every cell. Explicit cells take their entry in `solved`;
/// mapped cells apply their reference's increment.
std::vector<kinetics::CompositionVector> apply_mapping(
    const ZoneAssignment& assignment, std::span<const CellSample> cells,
    std::span<const kinetics::CompositionVector> own_states,
    const std::map<CellId, kinetics::CompositionVector>& solved);

}  // namespace chembalance::refmap
