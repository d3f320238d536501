#pragma once

#include <stdexcept>
#include <string>

namespace nvpool {

/// Thrown when an iterative numerical routine cannot reach its requested
/// tolerance (quadrature refinement exhausted, bracket not found, ...).
/// Carries the tolerance that was actually achieved so callers can decide
/// whether the partial result is usable.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double achieved_tolerance)
      : std::runtime_error(what), achieved_tolerance_(achieved_tolerance) {}

  double achieved_tolerance() const { return achieved_tolerance_; }

 private:
  double achieved_tolerance_;
};

}  // namespace nvpool
