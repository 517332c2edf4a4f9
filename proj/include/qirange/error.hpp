#pragma once

#include <stdexcept>
#include <string>

namespace qirange {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the physical model.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Fock-space truncation discards more probability than the tail rule allows.
class CutoffError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (CSV rows, headers, config documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Query outside the span of tabulated data.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Channel geometry produces a transmissivity above one.
class UnphysicalGeometryError : public Error {
 public:
  using Error::Error;
};

/// The detection threshold cannot be reached at any range.
class NoDetectionError : public Error {
 public:
  using Error::Error;
};

/// Covariance matrix has a significantly negative eigenvalue.
class NotPositiveSemidefiniteError : public Error {
 public:
  NotPositiveSemidefiniteError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Too few Monte Carlo trials to resolve the requested false-alarm level.
class InsufficientTrialsError : public Error {
 public:
  using Error::Error;
};

}  // namespace qirange
