#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chembalance {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mechanism text could not be parsed or failed validation.
class MechanismError : public Error {
 public:
  MechanismError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A thermodynamic evaluation was requested outside [T_low, T_high].
class ThermoRangeError : public Error {
 public:
  ThermoRangeError(const std::string& species, double T, double lo, double hi)
      : Error("temperature " + std::to_string(T) + " K outside thermo range [" +
              std::to_string(lo) + ", " + std::to_string(hi) + "] of species " +
              species),
        temperature_(T) {}
  double temperature() const noexcept { return temperature_; }

 private:
  double temperature_;
};

class DegenerateStreamsError : public Error {
 public:
  using Error::Error;
};

/// Exact zero pivot encountered after partial pivoting.
class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(std::size_t column)
      : Error("singular matrix: zero pivot in column " + std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// The adaptive integrator could not make progress.
class StiffnessFailure : public Error {
 public:
  StiffnessFailure(const std::string& what, double t, double h,
                   std::vector<double> state)
      : Error(what), t_(t), h_(h), state_(std::move(state)) {}
  double time() const noexcept { return t_; }
  double step() const noexcept { return h_; }
  const std::vector<double>& state() const noexcept { return state_; }

 private:
  double t_;
  double h_;
  std::vector<double> state_;
};

class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : Error(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Transport-level failure (peer aborted, channel closed).
class MessengerError : public Error {
 public:
  using Error::Error;
};

/// A worker observed a message the balance plan did not call for.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chembalance
