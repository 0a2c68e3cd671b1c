#include "chembalance/harness/report.hpp"

#include <fstream>
#include <string>

#include "chembalance/error.hpp"

namespace chembalance::harness {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.precision(17);
  return out;
}

}  // namespace

void write_timing_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "iteration,rank,busy_s,solves_explicit,solves_mapped\n";
  for (const auto& it : report.iterations) {
    for (const auto& w : it.workers) {
      out << it.iteration << ',' << w.rank << ',' << w.busy_s << ',' << w.solves_explicit
          << ',' << w.solves_mapped << '\n';
    }
  }
}

void write_summary(const BenchmarkReport& report, std::ostream& out) {
  const int n = static_cast<int>(report.iterations.size());
  out << "label = " << report.label << '\n'
      << "workers = " << report.workers << '\n'
      << "iterations = " << n << '\n'
      << "total_wall_s = " << report.total_wall_s << '\n'
      << "host_wall_s = " << report.host_wall_s << '\n'
      << "mean_imbalance = " << report.mean_imbalance(1, n) << '\n'
      << "mean_imbalance_10_50 = " << report.mean_imbalance(10, 50) << '\n'
      << "solves_explicit = " << report.solves_explicit << '\n'
      << "solves_mapped = " << report.solves_mapped << '\n'
      << "steps_accepted = " << report.stats.steps_accepted << '\n'
      << "steps_rejected = " << report.stats.steps_rejected << '\n'
      << "rhs_evals = " << report.stats.rhs_evals << '\n'
      << "jacobian_evals = " << report.stats.jacobian_evals << '\n'
      << "lu_factorizations = " << report.stats.lu_factorizations << '\n'
      << "final_max_temperature = " << report.final_max_temperature << '\n'
      << "baseline = " << (report.baseline_label.empty() ? report.label : report.baseline_label)
      << '\n'
      << "chi_su = " << report.chi_su() << '\n';
  out << "imbalance_by_iteration =";
  for (const auto& it : report.iterations) out << ' ' << it.imbalance;
  out << '\n';
}

void emit_report(const BenchmarkReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());
  {
    auto out = open_for_write(dir / "timing.csv");
    write_timing_csv(report, out);
  }
  auto out = open_for_write(dir / "summary.txt");
  write_summary(report, out);
}

std::pair<std::string, double> read_summary_wall(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::string label;
  double wall = 0.0;
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 3);
    if (key == "label") label = value;
    if (key == "total_wall_s") wall = std::stod(value);
  }
  if (!(wall > 0.0)) throw Error("no total_wall_s in '" + path.string() + "'");
  return {label, wall};
}

void write_field_csv(const FieldState& field, const kinetics::Mechanism& mech,
                     std::ostream& out) {
  out << "x,y,T,Z";
  for (const auto& s : mech.species()) out << ',' << s.name;
  out << '\n';
  for (int ix = 0; ix < field.nx; ++ix) {
    for (int iy = 0; iy < field.ny; ++iy) {
      const std::size_t c = field.index(ix, iy);
      const auto& cell = field.cells[c];
      out << field.x_center(ix) << ',' << field.y_center(iy) << ',' << cell.temperature << ','
          << field.z[c];
      for (double y : cell.full_mass_fractions()) out << ',' << y;
      out << '\n';
    }
  }
}

}  // namespace chembalance::harness
