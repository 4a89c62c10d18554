#pragma once

#include <stdexcept>
#include <string>

namespace tgc {

// Parameter tuples or inputs outside a documented domain.
class invalid_parameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A construction could not be realized (e.g. a template with no consistent width).
class construction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class rank_deficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class span_violation : public std::runtime_error {
 public:
  span_violation(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class guard_exceeded : public std::runtime_error {
 public:
  guard_exceeded(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace tgc
