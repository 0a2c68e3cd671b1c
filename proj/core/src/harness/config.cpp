#include "chembalance/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "chembalance/error.hpp"

namespace chembalance::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" +
                      std::string(key) + "'");
  }
  return out;
}

bool parse_flag(std::string_view key, std::string_view value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("invalid flag '" + std::string(value) + "' for key '" +
                    std::string(key) + "'");
}

}  // namespace

std::string_view to_string(RunMode mode) noexcept {
  switch (mode) {
    case RunMode::standard:
      return "standard";
    case RunMode::balanced:
      return "balanced";
    case RunMode::balanced_analytic:
      return "balanced-analytic";
  }
  return "unknown";
}

RunMode parse_mode(std::string_view text) {
  if (text == "standard") return RunMode::standard;
  if (text == "balanced") return RunMode::balanced;
  if (text == "balanced-analytic" || text == "balanced+analytic") {
    return RunMode::balanced_analytic;
  }
  throw ConfigError("unknown mode '" + std::string(text) + "'");
}

ode::JacobianMode RunConfig::jacobian_mode() const noexcept {
  return mode == RunMode::balanced_analytic ? ode::JacobianMode::analytical
                                            : ode::JacobianMode::finite_difference;
}

void RunConfig::validate() const {
  if (nx < 1 || ny < 1) throw ConfigError("nx and ny must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (static_cast<long>(nx) * ny < workers) throw ConfigError("nx * ny must be >= workers");
  if (iterations < 0) throw ConfigError("iterations must be >= 0");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(tol.abstol > 0.0) || !(tol.reltol > 0.0)) {
    throw ConfigError("abstol and reltol must be positive");
  }
  if (!(diffusivity >= 0.0)) throw ConfigError("diffusivity must be >= 0");
  if (!(theta >= 0.0)) throw ConfigError("theta must be >= 0");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
  if (!(layer.length > 0.0) || !(layer.pressure > 0.0) || !(layer.width_fraction > 0.0)) {
    throw ConfigError("length, pressure and width_fraction must be positive");
  }
  if (!(layer.t_base > 0.0) || !(layer.t_peak > 0.0) || layer.t_noise < 0.0) {
    throw ConfigError("invalid temperature profile");
  }
  refmap.validate();
}

void RunConfig::set(std::string_view key, std::string_view value) {
  auto number = [&](auto& field) {
    field = parse_number<std::remove_reference_t<decltype(field)>>(key, value);
  };
  if (key == "mechanism") mechanism = std::string(value);
  else if (key == "nx") number(nx);
  else if (key == "ny") number(ny);
  else if (key == "workers") number(workers);
  else if (key == "iterations") number(iterations);
  else if (key == "dt") number(dt);
  else if (key == "abstol") number(tol.abstol);
  else if (key == "reltol") number(tol.reltol);
  else if (key == "mode") mode = parse_mode(value);
  else if (key == "refmap" || key == "refmap.enabled") refmap.enabled = parse_flag(key, value);
  else if (key == "refmap.z_bins") number(refmap.z_bins);
  else if (key == "refmap.eps_z") number(refmap.eps_z);
  else if (key == "refmap.eps_t") number(refmap.eps_t);
  else if (key == "diffusivity") number(diffusivity);
  else if (key == "seed") number(layer.seed);
  else if (key == "length") number(layer.length);
  else if (key == "pressure") number(layer.pressure);
  else if (key == "t_base") number(layer.t_base);
  else if (key == "t_peak") number(layer.t_peak);
  else if (key == "width_fraction") number(layer.width_fraction);
  else if (key == "t_noise") number(layer.t_noise);
  else if (key == "fuel") fuel = std::string(value);
  else if (key == "oxidizer") oxidizer = std::string(value);
  else if (key == "theta") number(theta);
  else if (key == "snapshot_every") number(snapshot_every);
  else throw ConfigError("unknown key '" + std::string(key) + "'");
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (config.mechanism.is_relative() && !base_dir.empty()) {
    config.mechanism = base_dir / config.mechanism;
  }
  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), path.parent_path());
}

}  // namespace chembalance::harness
