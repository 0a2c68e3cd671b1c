#include <bit>
#include <cstring>

#include "chembalance/balance/problem.hpp"
#include "chembalance/error.hpp"

namespace chembalance::balance {

namespace {

std::uint64_t to_little(std::uint64_t v) noexcept {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

class Writer {
 public:
  explicit Writer(std::size_t reserve) { bytes_.reserve(reserve); }
  void u64(std::uint64_t v) {
    const std::uint64_t le = to_little(v);
    const auto* p = reinterpret_cast<const std::byte*>(&le);
    bytes_.insert(bytes_.end(), p, p + 8);
  }
  void i64(std::int64_t v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::vector<std::byte> take() { return std::move(bytes_); }

 private:
  std::vector<std::byte> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> bytes) : bytes_(bytes) {}
  std::uint64_t u64() {
    if (pos_ + 8 > bytes_.size()) throw DecodeError("truncated buffer", pos_);
    std::uint64_t v = 0;
    std::memcpy(&v, bytes_.data() + pos_, 8);
    pos_ += 8;
    return to_little(v);
  }
  std::int64_t i64() { return std::bit_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

std::uint64_t read_count(Reader& in, std::size_t record, const char* what) {
  const auto count = in.u64();
  if (record > 0 && count > in.remaining() / record) {
    throw DecodeError(std::string("truncated buffer: ") + what +
                          " count exceeds payload",
                      in.offset() + in.remaining());
  }
  return count;
}

}  // namespace

std::vector<std::byte> encode_problems(std::span<const ChemistryProblem> problems) {
  const std::size_t n = problems.empty() ? 0 : problems.front().phi.state_size();
  Writer out(8 + problems.size() * problem_record_size(n));
  out.u64(problems.size());
  for (const auto& p : problems) {
    if (p.phi.state_size() != n) {
      throw Error("encode_problems: inconsistent composition sizes");
    }
    out.i64(p.cell_id);
    out.f64(p.dt);
    out.f64(p.pressure);
    out.f64(p.phi.temperature);
    for (double y : p.phi.mass_fractions) out.f64(y);
    out.f64(p.cost_estimate);
  }
  return out.take();
}

std::vector<ChemistryProblem> decode_problems(std::span<const std::byte> buffer,
                                              std::size_t n_species) {
  Reader in(buffer);
  const auto count = read_count(in, problem_record_size(n_species), "problem");
  std::vector<ChemistryProblem> out(count);
  for (auto& p : out) {
    p.cell_id = in.i64();
    p.dt = in.f64();
    p.pressure = in.f64();
    p.phi.temperature = in.f64();
    p.phi.mass_fractions.resize(n_species - 1);
    for (double& y : p.phi.mass_fractions) y = in.f64();
    p.cost_estimate = in.f64();
  }
  if (in.remaining() != 0) {
    throw DecodeError("trailing bytes after problem records", in.offset());
  }
  return out;
}

std::vector<std::byte> encode_solutions(std::span<const ChemistrySolution> solutions) {
  const std::size_t n = solutions.empty() ? 0 : solutions.front().phi.state_size();
  Writer out(8 + solutions.size() * solution_record_size(n));
  out.u64(solutions.size());
  for (const auto& s : solutions) {
    if (s.phi.state_size() != n) {
      throw Error("encode_solutions: inconsistent composition sizes");
    }
    out.i64(s.cell_id);
    out.f64(s.phi.temperature);
    for (double y : s.phi.mass_fractions) out.f64(y);
    out.f64(s.measured_cost);
    out.i64(s.stats.steps_accepted);
    out.i64(s.stats.steps_rejected);
    out.i64(s.stats.rhs_evals);
    out.i64(s.stats.jacobian_evals);
    out.i64(s.stats.lu_factorizations);
    out.f64(s.stats.cpu_time);
  }
  return out.take();
}

std::vector<ChemistrySolution> decode_solutions(std::span<const std::byte> buffer,
                                                std::size_t n_species) {
  Reader in(buffer);
  const auto count = read_count(in, solution_record_size(n_species), "solution");
  std::vector<ChemistrySolution> out(count);
  for (auto& s : out) {
    s.cell_id = in.i64();
    s.phi.temperature = in.f64();
    s.phi.mass_fractions.resize(n_species - 1);
    for (double& y : s.phi.mass_fractions) y = in.f64();
    s.measured_cost = in.f64();
    s.stats.steps_accepted = in.i64();
    s.stats.steps_rejected = in.i64();
    s.stats.rhs_evals = in.i64();
    s.stats.jacobian_evals = in.i64();
    s.stats.lu_factorizations = in.i64();
    s.stats.cpu_time = in.f64();
  }
  if (in.remaining() != 0) {
    throw DecodeError("trailing bytes after solution records", in.offset());
  }
  return out;
}

}  // namespace chembalance::balance
