#pragma once

#include <stdexcept>
#include <string>

namespace fkdv {

// Parameter outside the domain of a closed form or special function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Cnoidal modulus too close to 0 or 1 for the cn representation to be useful.
class DegenerateModulusError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Sampling too coarse for the derivatives a check needs.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite-difference derivative in c did not settle across step sizes.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace fkdv
