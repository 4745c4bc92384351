#pragma once

#include <stdexcept>
#include <string>

namespace pvb {

/// Root of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the domain of a non-periodic basis.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested quantity has no implementation for the given model.
class NotAvailable : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: the solve could be set up but not carried out.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IllConditionedFrame : public NumericalError {
 public:
  IllConditionedFrame(const std::string& what, double cond)
      : NumericalError(what), cond_(cond) {}
  double condition_number() const noexcept { return cond_; }

 private:
  double cond_;
};

/// A metric (overlap) matrix that is not positive definite.
class MetricSingular : public NumericalError {
 public:
  MetricSingular(const std::string& what, double lambda_min)
      : NumericalError(what), lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  double lambda_min_;
};

class EmptyMask : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string field = {}, int line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

}  // namespace pvb
