#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chembalance/constants.hpp"
#include "chembalance/error.hpp"
#include "chembalance/kinetics/mechanism.hpp"

namespace chembalance::kinetics {

namespace {

struct LogicalLine {
  int number;  // first physical line
  std::string text;
};

enum class Section { none, elements, species, reactions, streams };

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

double require_double(std::string_view s, int line, const char* what) {
  auto v = to_double(s);
  if (!v) {
    throw MechanismError("expected number for " + std::string(what) +
                             ", got '" + std::string(s) + "'",
                         line);
  }
  return *v;
}

std::vector<LogicalLine> logical_lines(std::string_view text) {
  std::vector<LogicalLine> lines;
  std::string pending;
  int pending_start = 0;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    raw = trim(raw);
    bool continued = !raw.empty() && raw.back() == '\\';
    if (continued) raw.remove_suffix(1);
    if (pending.empty()) pending_start = number;
    if (!raw.empty()) {
      if (!pending.empty()) pending += ' ';
      pending += raw;
    }
    if (!continued && !pending.empty()) {
      lines.push_back({pending_start, std::move(pending)});
      pending.clear();
    }
    if (eol == text.size()) break;
  }
  if (!pending.empty()) lines.push_back({pending_start, std::move(pending)});
  return lines;
}

struct SpeciesDraft {
  SpeciesSpec spec;
  int line;
};

struct ReactionDraft {
  std::string equation;
  std::vector<std::pair<std::string, int>> reactants, products;
  double a, b, ea;
  bool reversible;
  bool third_body;
  std::vector<std::pair<std::string, double>> efficiencies;
  int line;
};

std::vector<std::pair<std::string, int>> parse_side(std::string_view side,
                                                    int line) {
  std::vector<std::pair<std::string, int>> terms;
  std::size_t start = 0;
  while (start <= side.size()) {
    std::size_t plus = side.find('+', start);
    if (plus == std::string_view::npos) plus = side.size();
    std::string_view term = trim(side.substr(start, plus - start));
    start = plus + 1;
    if (term.empty()) {
      throw MechanismError("empty term in reaction equation", line);
    }
    int coeff = 1;
    std::size_t k = 0;
    while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k])))
      ++k;
    if (k > 0) {
      coeff = std::stoi(std::string(term.substr(0, k)));
      term = trim(term.substr(k));
    }
    if (term.empty()) {
      throw MechanismError("missing species name in reaction term", line);
    }
    bool merged = false;
    for (auto& [name, c] : terms) {
      if (name == term) {
        c += coeff;
        merged = true;
      }
    }
    if (!merged) terms.emplace_back(std::string(term), coeff);
    if (plus == side.size()) break;
  }
  return terms;
}

ReactionDraft parse_reaction(const LogicalLine& ll) {
  // Isolate parentheses so "M(" and "M (" tokenize the same way.
  std::string spaced;
  for (char c : ll.text) {
    if (c == '(' || c == ')') {
      spaced += ' ';
      spaced += c;
      spaced += ' ';
    } else {
      spaced += c;
    }
  }
  auto tokens = split_ws(spaced);

  ReactionDraft d{};
  d.line = ll.number;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i] == "M" && tokens[i + 1] == "(") {
      std::size_t close = i + 2;
      while (close < tokens.size() && tokens[close] != ")") ++close;
      if (close == tokens.size()) {
        throw MechanismError("unterminated third-body clause", ll.number);
      }
      for (std::size_t k = i + 2; k < close; ++k) {
        const auto colon = tokens[k].find(':');
        if (colon == std::string::npos) {
          throw MechanismError("third-body efficiency must be name:value, got '" +
                                   tokens[k] + "'",
                               ll.number);
        }
        d.efficiencies.emplace_back(
            tokens[k].substr(0, colon),
            require_double(std::string_view(tokens[k]).substr(colon + 1),
                           ll.number, "third-body efficiency"));
      }
      d.third_body = true;
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(close + 1));
      break;
    }
  }

  if (tokens.size() < 4) {
    throw MechanismError("reaction needs an equation and A, b, Ea", ll.number);
  }
  const std::size_t n = tokens.size();
  d.a = require_double(tokens[n - 3], ll.number, "A");
  d.b = require_double(tokens[n - 2], ll.number, "b");
  d.ea = require_double(tokens[n - 1], ll.number, "Ea");

  std::string eq;
  for (std::size_t i = 0; i + 3 < n; ++i) {
    if (!eq.empty()) eq += ' ';
    eq += tokens[i];
  }
  d.equation = eq;

  std::size_t arrow = eq.find("<=>");
  std::size_t arrow_len = 3;
  d.reversible = true;
  if (arrow == std::string::npos) {
    arrow = eq.find("=>");
    arrow_len = 2;
    d.reversible = false;
  }
  if (arrow == std::string::npos) {
    arrow = eq.find('=');
    arrow_len = 1;
    d.reversible = true;
  }
  if (arrow == std::string::npos) {
    throw MechanismError("reaction equation has no arrow: " + eq, ll.number);
  }
  d.reactants = parse_side(std::string_view(eq).substr(0, arrow), ll.number);
  d.products = parse_side(std::string_view(eq).substr(arrow + arrow_len), ll.number);
  return d;
}

std::vector<std::pair<std::string, double>> parse_pairs(
    const std::vector<std::string>& tokens, std::size_t first, int line) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    const auto colon = tokens[i].find(':');
    if (colon == std::string::npos) {
      throw MechanismError("expected name:value, got '" + tokens[i] + "'", line);
    }
    out.emplace_back(tokens[i].substr(0, colon),
                     require_double(std::string_view(tokens[i]).substr(colon + 1),
                                    line, "composition value"));
  }
  return out;
}

}  // namespace

Mechanism parse_mechanism(std::string_view text) {
  std::vector<Element> elements;
  std::vector<SpeciesDraft> species;
  std::vector<ReactionDraft> reactions;
  std::vector<std::pair<std::string, double>> fuel, oxidizer;
  int fuel_line = 0, oxidizer_line = 0;

  Section section = Section::none;
  for (const auto& ll : logical_lines(text)) {
    auto tokens = split_ws(ll.text);
    if (tokens.size() == 1) {
      const auto& t = tokens[0];
      if (t == "ELEMENTS") { section = Section::elements; continue; }
      if (t == "SPECIES") { section = Section::species; continue; }
      if (t == "REACTIONS") { section = Section::reactions; continue; }
      if (t == "STREAMS") { section = Section::streams; continue; }
      if (t == "END") { section = Section::none; continue; }
    }
    switch (section) {
      case Section::none:
        throw MechanismError("content outside of any section: " + ll.text,
                             ll.number);
      case Section::elements: {
        if (tokens.size() % 2 != 0) {
          throw MechanismError("ELEMENTS entries are 'symbol weight' pairs",
                               ll.number);
        }
        for (std::size_t i = 0; i < tokens.size(); i += 2) {
          elements.push_back(
              {tokens[i], require_double(tokens[i + 1], ll.number, "atomic weight")});
        }
        break;
      }
      case Section::species: {
        SpeciesDraft d{};
        d.line = ll.number;
        d.spec.name = tokens[0];
        if (d.spec.name == "M") {
          throw MechanismError("'M' is reserved for third bodies", ll.number);
        }
        std::vector<double> numbers;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          const auto colon = tokens[i].find(':');
          if (colon != std::string::npos) {
            if (!numbers.empty()) {
              throw MechanismError("composition must precede thermo data",
                                   ll.number);
            }
            const double count = require_double(
                std::string_view(tokens[i]).substr(colon + 1), ll.number,
                "atom count");
            if (count != std::floor(count)) {
              throw MechanismError("atom counts must be integers", ll.number);
            }
            d.spec.composition[tokens[i].substr(0, colon)] +=
                static_cast<int>(count);
          } else {
            numbers.push_back(require_double(tokens[i], ll.number, "thermo data"));
          }
        }
        if (numbers.size() != 17) {
          throw MechanismError("species " + d.spec.name +
                                   ": malformed NASA ranges, expected Tlow Tmid "
                                   "Thigh and 14 coefficients, got " +
                                   std::to_string(numbers.size()) + " numbers",
                               ll.number);
        }
        auto& th = d.spec.thermo;
        th.t_low = numbers[0];
        th.t_mid = numbers[1];
        th.t_high = numbers[2];
        for (int k = 0; k < 7; ++k) {
          th.low[k] = numbers[3 + k];
          th.high[k] = numbers[10 + k];
        }
        species.push_back(std::move(d));
        break;
      }
      case Section::reactions:
        reactions.push_back(parse_reaction(ll));
        break;
      case Section::streams: {
        if (tokens[0] == "fuel") {
          fuel = parse_pairs(tokens, 1, ll.number);
          fuel_line = ll.number;
        } else if (tokens[0] == "oxidizer") {
          oxidizer = parse_pairs(tokens, 1, ll.number);
          oxidizer_line = ll.number;
        } else {
          throw MechanismError("unknown stream '" + tokens[0] + "'", ll.number);
        }
        break;
      }
    }
  }

  std::map<std::string, std::size_t> index;
  std::vector<SpeciesSpec> specs;
  for (auto& d : species) {
    if (!index.emplace(d.spec.name, specs.size()).second) {
      throw MechanismError("duplicate species " + d.spec.name, d.line);
    }
    specs.push_back(std::move(d.spec));
  }
  const std::size_t n = specs.size();

  auto lookup = [&](const std::string& name, int line) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw MechanismError("unknown species '" + name + "'", line);
    }
    return it->second;
  };

  std::vector<ReactionSpec> specs_r;
  for (const auto& d : reactions) {
    ReactionSpec r;
    r.equation = d.equation;
    for (const auto& [name, c] : d.reactants)
      r.reactants.push_back({lookup(name, d.line), c});
    for (const auto& [name, c] : d.products)
      r.products.push_back({lookup(name, d.line), c});
    r.pre_exponential = d.a;
    r.temperature_exponent = d.b;
    r.activation_energy = d.ea;
    r.activation_temperature = d.ea / constants::gas_constant_cal;
    r.reversible = d.reversible;
    if (d.third_body) {
      r.third_body_efficiencies.assign(n, 1.0);
      for (const auto& [name, eff] : d.efficiencies)
        r.third_body_efficiencies[lookup(name, d.line)] = eff;
    }
    if (!(r.pre_exponential > 0.0)) {
      throw MechanismError("reaction '" + r.equation +
                               "': non-positive pre-exponential factor",
                           d.line);
    }
    specs_r.push_back(std::move(r));
  }

  auto dense = [&](const std::vector<std::pair<std::string, double>>& pairs,
                   int line, const char* label) {
    if (pairs.empty()) {
      throw MechanismError(std::string("STREAMS section lacks a ") + label +
                           " entry");
    }
    std::vector<double> y(n, 0.0);
    for (const auto& [name, v] : pairs) y[lookup(name, line)] += v;
    return y;
  };
  auto fuel_y = dense(fuel, fuel_line, "fuel");
  auto ox_y = dense(oxidizer, oxidizer_line, "oxidizer");

  // Species and streams first, then each reaction alone so errors carry the
  // reaction's line number.
  Mechanism base(elements, specs, {}, fuel_y, ox_y);
  for (std::size_t k = 0; k < specs_r.size(); ++k) {
    try {
      Mechanism probe(elements, specs, {specs_r[k]}, fuel_y, ox_y);
    } catch (const MechanismError& e) {
      throw MechanismError(e.what(), reactions[k].line);
    }
  }
  return Mechanism(std::move(elements), std::move(specs), std::move(specs_r),
                   std::move(fuel_y), std::move(ox_y));
}

Mechanism load_mechanism(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MechanismError("cannot open mechanism file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mechanism(ss.str());
}

std::vector<double> parse_composition(const Mechanism& mech,
                                      std::string_view text) {
  std::vector<double> y(mech.n_species(), 0.0);
  for (const auto& tok : split_ws(text)) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) {
      throw MechanismError("expected name:value, got '" + tok + "'");
    }
    auto idx = mech.species_index(tok.substr(0, colon));
    if (!idx) {
      throw MechanismError("unknown species '" + tok.substr(0, colon) + "'");
    }
    y[*idx] += require_double(std::string_view(tok).substr(colon + 1), 0,
                              "composition value");
  }
  return y;
}

}  // namespace chembalance::kinetics
