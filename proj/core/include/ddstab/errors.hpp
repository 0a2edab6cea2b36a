#pragma once

#include <stdexcept>
#include <string>

namespace ddstab {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query fell outside the time span held by a history buffer.
class OutOfRangeError : public Error {
 public:
  OutOfRangeError(double query, double span_begin, double span_end);

  double query() const { return query_; }
  double span_begin() const { return begin_; }
  double span_end() const { return end_; }

 private:
  double query_;
  double begin_;
  double end_;
};

/// The right-hand side produced NaN or Inf.
class NumericBlowupError : public Error {
 public:
  NumericBlowupError(double t, std::string state_summary);

  double time() const { return t_; }

 private:
  double t_;
};

/// Invalid user-supplied configuration (file or programmatic).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An argument violates a documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddstab
