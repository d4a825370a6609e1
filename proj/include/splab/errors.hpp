#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace splab {

// Invalid model parameter or argument range (p outside (0,1), n < 1, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A growth history that cannot be replayed. step is the 0-based step index.
class HistoryError : public std::invalid_argument {
 public:
  HistoryError(std::size_t step, const std::string& what)
      : std::invalid_argument("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// An alternating sum needs more mantissa bits than were supplied.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(int supplied_bits, int required_bits)
      : std::runtime_error("working precision of " + std::to_string(supplied_bits) +
                           " bits is insufficient; need at least " + std::to_string(required_bits) +
                           " bits"),
        supplied_(supplied_bits),
        required_(required_bits) {}
  int supplied_bits() const noexcept { return supplied_; }
  int required_bits() const noexcept { return required_; }

 private:
  int supplied_;
  int required_;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
        achieved_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration refused because the requested size is above the cap.
class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(const std::string& what, std::uint64_t estimated_histories)
      : std::runtime_error(what), estimate_(estimated_histories) {}
  std::uint64_t estimated_histories() const noexcept { return estimate_; }

 private:
  std::uint64_t estimate_;
};

class StatisticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace splab
