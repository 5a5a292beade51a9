#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace squidom {

/// Input outside the mathematical domain of an operation (secant pole,
/// non-positive transcendental right-hand side, bad truncation dimension).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configuration field failed validation. `field` is the dotted path.
class validation_error : public std::invalid_argument {
 public:
  validation_error(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Numerical non-convergence: stiff integration, exhausted truncation ladder,
/// parametric drive above threshold.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Liouvillian has more than one stationary state.
class degeneracy_error : public convergence_error {
 public:
  using convergence_error::convergence_error;
};

/// Normalized photon statistics requested for a state with no photons.
class absent_photons_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace squidom
