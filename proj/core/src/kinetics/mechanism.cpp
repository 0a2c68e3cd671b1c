#include "chembalance/kinetics/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "chembalance/error.hpp"
#include "chembalance/kinetics/thermo.hpp"

namespace chembalance::kinetics {

namespace {

constexpr double stream_sum_tol = 1e-10;
constexpr double thermo_continuity_tol = 1e-3;

void check_stream(const std::vector<double>& stream, std::size_t n,
                  const char* label) {
  if (stream.size() != n) {
    throw MechanismError(std::string(label) + " stream has " +
                         std::to_string(stream.size()) + " entries, expected " +
                         std::to_string(n));
  }
  double sum = 0.0;
  for (double y : stream) {
    if (y < 0.0 || y > 1.0) {
      throw MechanismError(std::string(label) +
                           " stream mass fraction outside [0, 1]");
    }
    sum += y;
  }
  if (std::abs(sum - 1.0) > stream_sum_tol) {
    std::ostringstream os;
    os << label << " stream mass fractions sum to " << sum << ", not 1";
    throw MechanismError(os.str());
  }
}

bool close(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= thermo_continuity_tol * scale;
}

}  // namespace

int ReactionSpec::delta_nu() const noexcept {
  int dn = 0;
  for (const auto& t : products) dn += t.coefficient;
  for (const auto& t : reactants) dn -= t.coefficient;
  return dn;
}

int ReactionSpec::net_coefficient(std::size_t species) const noexcept {
  int nu = 0;
  for (const auto& t : products)
    if (t.species == species) nu += t.coefficient;
  for (const auto& t : reactants)
    if (t.species == species) nu -= t.coefficient;
  return nu;
}

Mechanism::Mechanism(std::vector<Element> elements,
                     std::vector<SpeciesSpec> species,
                     std::vector<ReactionSpec> reactions,
                     std::vector<double> fuel_stream,
                     std::vector<double> oxidizer_stream)
    : elements_(std::move(elements)),
      species_(std::move(species)),
      reactions_(std::move(reactions)),
      fuel_(std::move(fuel_stream)),
      oxidizer_(std::move(oxidizer_stream)) {
  std::set<std::string> symbols;
  for (const auto& e : elements_) {
    if (!(e.atomic_weight > 0.0)) {
      throw MechanismError("element " + e.symbol +
                           " has non-positive atomic weight");
    }
    if (!symbols.insert(e.symbol).second) {
      throw MechanismError("duplicate element " + e.symbol);
    }
  }
  if (species_.empty()) throw MechanismError("mechanism has no species");

  const std::size_t n = species_.size();
  element_counts_.assign(elements_.size() * n, 0);
  weights_.resize(n);
  std::set<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = species_[i];
    if (!names.insert(s.name).second) {
      throw MechanismError("duplicate species " + s.name);
    }
    double w = 0.0;
    for (const auto& [sym, count] : s.composition) {
      const auto e = element_index(sym);
      if (!e) {
        throw MechanismError("species " + s.name + " uses unknown element " +
                             sym);
      }
      if (count <= 0) {
        throw MechanismError("species " + s.name +
                             " has non-positive atom count");
      }
      element_counts_[*e * n + i] = count;
      w += count * elements_[*e].atomic_weight;
    }
    if (!(w > 0.0)) {
      throw MechanismError("species " + s.name + " has no atoms");
    }
    s.molecular_weight = w;
    weights_[i] = w;
  }
  validate();
}

void Mechanism::validate() const {
  const std::size_t n = species_.size();

  for (const auto& s : species_) {
    const auto& th = s.thermo;
    if (!(th.t_low < th.t_mid && th.t_mid < th.t_high)) {
      throw MechanismError("species " + s.name +
                           ": malformed NASA ranges, need Tlow < Tmid < Thigh");
    }
    const auto lo = reduced_thermo(th.low, th.t_mid);
    const auto hi = reduced_thermo(th.high, th.t_mid);
    if (!close(lo.cp_over_r, hi.cp_over_r) ||
        !close(lo.h_over_rt, hi.h_over_rt) ||
        !close(lo.s_over_r, hi.s_over_r)) {
      throw MechanismError("species " + s.name +
                           ": thermo polynomials discontinuous at Tmid");
    }
  }

  for (const auto& r : reactions_) {
    if (!(r.pre_exponential > 0.0)) {
      throw MechanismError("reaction '" + r.equation +
                           "': non-positive pre-exponential factor");
    }
    if (r.reactants.empty() || r.products.empty()) {
      throw MechanismError("reaction '" + r.equation +
                           "' needs reactants and products");
    }
    for (const auto* side : {&r.reactants, &r.products}) {
      for (const auto& t : *side) {
        if (t.species >= n) {
          throw MechanismError("reaction '" + r.equation +
                               "' references unknown species");
        }
        if (t.coefficient < 1) {
          throw MechanismError("reaction '" + r.equation +
                               "': stoichiometric coefficient < 1");
        }
      }
    }
    if (r.has_third_body()) {
      if (r.third_body_efficiencies.size() != n) {
        throw MechanismError("reaction '" + r.equation +
                             "': efficiency vector has wrong length");
      }
      for (double eff : r.third_body_efficiencies) {
        if (eff < 0.0) {
          throw MechanismError("reaction '" + r.equation +
                               "': negative third-body efficiency");
        }
      }
    }
    std::ostringstream deficit;
    bool balanced = true;
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      int lhs = 0, rhs = 0;
      for (const auto& t : r.reactants) lhs += t.coefficient * atoms(e, t.species);
      for (const auto& t : r.products) rhs += t.coefficient * atoms(e, t.species);
      if (lhs != rhs) {
        balanced = false;
        deficit << ' ' << elements_[e].symbol << ": " << lhs << " vs " << rhs
                << ';';
      }
    }
    if (!balanced) {
      throw MechanismError("element imbalance in reaction '" + r.equation +
                           "' (reactants vs products):" + deficit.str());
    }
  }

  check_stream(fuel_, n, "fuel");
  check_stream(oxidizer_, n, "oxidizer");
}

std::optional<std::size_t> Mechanism::species_index(std::string_view name) const {
  for (std::size_t i = 0; i < species_.size(); ++i)
    if (species_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Mechanism::element_index(std::string_view symbol) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].symbol == symbol) return i;
  return std::nullopt;
}

Mechanism Mechanism::with_streams(std::vector<double> fuel,
                                  std::vector<double> oxidizer) const {
  Mechanism copy = *this;
  check_stream(fuel, species_.size(), "fuel");
  check_stream(oxidizer, species_.size(), "oxidizer");
  copy.fuel_ = std::move(fuel);
  copy.oxidizer_ = std::move(oxidizer);
  return copy;
}

}  // namespace chembalance::kinetics
