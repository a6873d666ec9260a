#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace greenopt {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using CVec2 = Eigen::Vector2cd;

inline constexpr double pi = std::numbers::pi;

// Internal units: lengths in micrometres, c = mu0 = eps0 = hbar = 1.
// Every reported observable is a ratio, so the prefactor convention cancels.
inline constexpr double speed_of_light = 1.0;

inline double omega_from_wavelength(double wavelength_um) {
  return 2.0 * pi * speed_of_light / wavelength_um;
}

inline double wavelength_from_omega(double omega) {
  return 2.0 * pi * speed_of_light / omega;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid configuration. `field()` names the offending key when
// the failure is a validation error.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string field = {})
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public SolverError {
 public:
  using SolverError::SolverError;
};

class InstabilityError : public SolverError {
 public:
  using SolverError::SolverError;
};

class NoEligibleCellsError : public Error {
 public:
  using Error::Error;
};

}  // namespace greenopt
