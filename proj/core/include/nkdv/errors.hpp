#pragma once

#include <stdexcept>
#include <string>

namespace nkdv {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied arguments outside the documented domain (CLI exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Inputs are individually valid but mutually inconsistent, e.g. a periodic
// zero-mean antiderivative requested for data with non-zero mean.
class InconsistentInput : public InvalidInput {
 public:
  InconsistentInput(const std::string& what, double residual)
      : InvalidInput(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A numeric procedure failed to converge or produced non-finite values
// (CLI exit code 1).
class NumericFailure : public Error {
 public:
  using Error::Error;
};

// Evaluation requested at or next to a pole of a closed-form profile.
class SingularityError : public NumericFailure {
 public:
  SingularityError(const std::string& what, double nearest)
      : NumericFailure(what), nearest_(nearest) {}
  double nearest_singularity() const noexcept { return nearest_; }

 private:
  double nearest_;
};

}  // namespace nkdv
