#pragma once

#include <stdexcept>
#include <string>

namespace wellopt {

// Malformed text input; carries the 1-based position of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(std::move(message)), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Numerical failure inside the simulator (singular system, non-convergence,
// saturation overshoot). Distinct from death-penalty outcomes, which are
// regular values, not errors.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& message)
      : std::runtime_error(message) {}
  SimulationError(const std::string& message, double residual)
      : std::runtime_error(message), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// Explicit transport step asked to exceed its stability bound.
class CflError : public SimulationError {
 public:
  CflError(double dt_days, double limit_days)
      : SimulationError("transport dt " + std::to_string(dt_days) +
                        " d exceeds CFL limit " + std::to_string(limit_days) +
                        " d; sub-step the interval"),
        dt_days_(dt_days),
        limit_days_(limit_days) {}
  double dt_days() const { return dt_days_; }
  double limit_days() const { return limit_days_; }

 private:
  double dt_days_;
  double limit_days_;
};

}  // namespace wellopt
