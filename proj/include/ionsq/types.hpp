// types.hpp — shared scalar/matrix aliases and the error hierarchy.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ionsq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Default tolerances; every one of these is overridable through ProtocolConfig.
inline constexpr double kDefaultExpmTol = 1e-12;
inline constexpr double kDefaultIntegratorTol = 1e-9;
inline constexpr double kDefaultTailBudget = 1e-6;
inline constexpr double kDefaultTailMargin = 0.1;
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kPurityTol = 1e-9;

// Base error carrying the originating module and the violated guard, so the
// CLI can emit a machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string guard, const std::string& message,
        double tolerance = std::nan(""))
      : std::runtime_error(message),
        module_(std::move(module)),
        guard_(std::move(guard)),
        tolerance_(tolerance) {}

  const std::string& module() const { return module_; }
  const std::string& guard() const { return guard_; }
  double tolerance() const { return tolerance_; }

 private:
  std::string module_;
  std::string guard_;
  double tolerance_;
};

// Structural misuse: mismatched spaces, out-of-range indices, bad arguments.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A numerical guard fired (tail mass, unitarity, norm drift, stiffness).
// CLI exit code 3.
class GuardError : public Error {
 public:
  using Error::Error;
};

// Config parsing/validation failure; collects every issue found. Exit code 2.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::vector<std::string> issues)
      : Error("cli", "config", message), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

}  // namespace ionsq
