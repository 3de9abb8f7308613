#pragma once

#include <stdexcept>
#include <string>

namespace dsatom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside the admissible physical or mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the region where a function is defined
/// (poles, horizons, singular points).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive procedure did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace dsatom
