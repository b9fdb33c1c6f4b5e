#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vibra {

/// Input outside the mathematical domain of an operation (nonpositive
/// tension, nu >= 1, a grid touching the pole, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller broke a documented precondition (mismatched vector lengths,
/// out-of-range samples, parity mismatch).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid or unparsable run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookup of an unknown name (material, preset).
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time-stepping run produced non-finite or runaway values.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}

  /// Index of the first time row that failed the check.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Linear solve failure (zero pivot).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Attempt to normalize a trace whose samples are all zero.
class SilentSignalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bell mode whose damping exceeds its stiffness term (no oscillation).
class OverdampedModeError : public std::runtime_error {
 public:
  OverdampedModeError(int k, const std::string& what)
      : std::runtime_error(what), k_(k) {}
  int k() const noexcept { return k_; }

 private:
  int k_;
};

/// Stability bisection bracket that does not straddle the boundary.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failures, always carrying the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vibra
