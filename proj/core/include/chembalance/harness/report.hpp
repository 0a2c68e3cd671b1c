#pragma once

#include <filesystem>
#include <ostream>

#include "chembalance/harness/benchmark.hpp"

namespace chembalance::harness {

/// iteration,rank,busy_s,solves_explicit,solves_mapped; one row per
/// iteration per worker.
void write_timing_csv(const BenchmarkReport& report, std::ostream& out);
/// `key = value` totals, imbalance ratios and chi_su.
void write_summary(const BenchmarkReport& report, std::ostream& out);
/// Writes timing.csv and summary.txt into `dir`, creating it if needed.
void emit_report(const BenchmarkReport& report, const std::filesystem::path& dir);

/// Reads total_wall_s and label back from a summary file.
std::pair<std::string, double> read_summary_wall(const std::filesystem::path& path);

/// x,y,T,Z and one column per species.
void write_field_csv(const FieldState& field, const kinetics::Mechanism& mech,
                     std::ostream& out);

}  // namespace chembalance::harness
