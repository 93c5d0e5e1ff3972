#pragma once

#include <stdexcept>
#include <string>

namespace nematorus {

/// Process exit codes used by the command-line front end.
enum class ExitStatus : int {
  Success = 0,
  ValidationError = 2,
  NumericalContract = 3,
  IoError = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitStatus status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  ExitStatus status() const noexcept { return status_; }

 private:
  ExitStatus status_;
};

/// A parameter or configuration violates a precondition.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ExitStatus::ValidationError, message) {}
};

/// The threshold search endpoints do not bracket the transition.
class BracketInvalid : public ValidationError {
 public:
  explicit BracketInvalid(const std::string& message) : ValidationError(message) {}
};

/// A numerical contract of the scheme was broken at run time.
class NumericalContractError : public Error {
 public:
  explicit NumericalContractError(const std::string& message)
      : Error(ExitStatus::NumericalContract, message) {}
};

class NonIntegerWinding : public NumericalContractError {
 public:
  NonIntegerWinding(double raw_theta, double raw_phi);
  double raw_theta() const noexcept { return raw_theta_; }
  double raw_phi() const noexcept { return raw_phi_; }

 private:
  double raw_theta_;
  double raw_phi_;
};

class EnergyIncreased : public NumericalContractError {
 public:
  EnergyIncreased(long step, double before, double after);
  long step() const noexcept { return step_; }
  double before() const noexcept { return before_; }
  double after() const noexcept { return after_; }

 private:
  long step_;
  double before_;
  double after_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ExitStatus::IoError, message) {}
};

}  // namespace nematorus
