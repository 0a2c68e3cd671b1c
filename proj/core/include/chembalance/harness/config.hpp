#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "chembalance/balance/plan.hpp"
#include "chembalance/harness/field.hpp"
#include "chembalance/ode/integrator.hpp"
#include "chembalance/refmap/refmap.hpp"

namespace chembalance::harness {

enum class RunMode { standard, balanced, balanced_analytic };

std::string_view to_string(RunMode mode) noexcept;
RunMode parse_mode(std::string_view text);

struct RunConfig {
  std::filesystem::path mechanism = "h2o2.mech";
  int nx = 64;
  int ny = 64;
  int workers = 8;
  int iterations = 50;
  double dt = 2e-6;  // s
  ode::ToleranceSpec tol;
  RunMode mode = RunMode::standard;
  refmap::RefMapConfig refmap;
  double diffusivity = 2e-4;  // m^2/s
  ShearLayerParams layer;
  std::string fuel;      // composition override, empty keeps the mechanism's
  std::string oxidizer;
  double theta = balance::default_churn_threshold;
  int snapshot_every = 0;  // 0 disables field snapshots

  void validate() const;
  /// Sets one `key = value` entry; keys mirror the field names, with
  /// `refmap.*` and the layer parameters flattened.
  void set(std::string_view key, std::string_view value);

  ode::JacobianMode jacobian_mode() const noexcept;
  bool balancing() const noexcept { return mode != RunMode::standard; }
  bool mapping() const noexcept { return mode != RunMode::standard && refmap.enabled; }
};

/// Parses flat `key = value` lines; `#` starts a comment. A relative
/// mechanism path is resolved against `base_dir`.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace chembalance::harness
