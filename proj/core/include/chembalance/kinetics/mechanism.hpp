#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chembalance::kinetics {

struct Element {
  std::string symbol;
  double atomic_weight = 0.0;  // kg/kmol
};

/// Two-range NASA-7 polynomial set.
struct NasaThermo {
  double t_low = 0.0;
  double t_mid = 0.0;
  double t_high = 0.0;
  std::array<double, 7> low{};
  std::array<double, 7> high{};

  const std::array<double, 7>& coefficients_for(double T) const noexcept {
    return T < t_mid ? low : high;
  }
};

struct SpeciesSpec {
  std::string name;
  std::map<std::string, int> composition;  // element symbol -> atom count
  double molecular_weight = 0.0;           // kg/kmol
  NasaThermo thermo;
};

struct StoichTerm {
  std::size_t species = 0;
  int coefficient = 1;

  friend bool operator==(const StoichTerm&, const StoichTerm&) = default;
};

/// Elementary reaction with modified Arrhenius forward rate.
///
/// Rate inputs use the Chemkin convention (mol, cm^3, s, cal/mol). The
/// activation energy is converted once to an activation temperature in K.
struct ReactionSpec {
  std::string equation;
  std::vector<StoichTerm> reactants;
  std::vector<StoichTerm> products;
  double pre_exponential = 0.0;
  double temperature_exponent = 0.0;
  double activation_energy = 0.0;       // cal/mol, as written
  double activation_temperature = 0.0;  // K
  bool reversible = true;
  /// Dense per-species collision efficiencies; empty unless third-body.
  std::vector<double> third_body_efficiencies;

  bool has_third_body() const noexcept {
    return !third_body_efficiencies.empty();
  }
  /// Sum of product minus reactant coefficients.
  int delta_nu() const noexcept;
  /// Net stoichiometric coefficient of one species (products minus reactants).
  int net_coefficient(std::size_t species) const noexcept;
};

/// Immutable, validated mechanism. Safe to share across threads.
class Mechanism {
 public:
  Mechanism(std::vector<Element> elements, std::vector<SpeciesSpec> species,
            std::vector<ReactionSpec> reactions, std::vector<double> fuel_stream,
            std::vector<double> oxidizer_stream);

  const std::vector<Element>& elements() const noexcept { return elements_; }
  const std::vector<SpeciesSpec>& species() const noexcept { return species_; }
  const std::vector<ReactionSpec>& reactions() const noexcept {
    return reactions_;
  }
  const std::vector<double>& fuel_stream() const noexcept { return fuel_; }
  const std::vector<double>& oxidizer_stream() const noexcept {
    return oxidizer_;
  }

  std::size_t n_species() const noexcept { return species_.size(); }
  std::size_t n_reactions() const noexcept { return reactions_.size(); }
  /// Length of the composition state (T, Y_1..Y_{N-1}).
  std::size_t state_size() const noexcept { return species_.size(); }

  std::optional<std::size_t> species_index(std::string_view name) const;
  std::optional<std::size_t> element_index(std::string_view symbol) const;

  const std::vector<double>& molecular_weights() const noexcept {
    return weights_;
  }
  /// Atoms of element e in species i.
  int atoms(std::size_t element, std::size_t species) const noexcept {
    return element_counts_[element * species_.size() + species];
  }

  /// Copy of this mechanism with different Bilger reference streams.
  Mechanism with_streams(std::vector<double> fuel,
                         std::vector<double> oxidizer) const;

 private:
  void validate() const;

  std::vector<Element> elements_;
  std::vector<SpeciesSpec> species_;
  std::vector<ReactionSpec> reactions_;
  std::vector<double> fuel_;
  std::vector<double> oxidizer_;
  std::vector<double> weights_;
  std::vector<int> element_counts_;
};

/// Parse and validate mechanism text; see docs/mechanism_format.md.
Mechanism parse_mechanism(std::string_view text);
Mechanism load_mechanism(const std::filesystem::path& path);

/// Parse a `name:value name:value ...` mass-fraction list against a mechanism's
/// species, returning a dense vector. Unlisted species are zero.
std::vector<double> parse_composition(const Mechanism& mech,
                                      std::string_view text);

}  // namespace chembalance::kinetics
