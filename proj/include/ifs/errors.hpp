#pragma once

#include <stdexcept>
#include <string>

namespace ifs {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on an argument was violated (bad k for shift, short prefix, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid input data (malformed probability vector, bad config, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A bounded search ran out of budget (hitting time past the horizon).
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

// A weighted series failed its declared envelope; names the offending series.
class DivergentSeries : public Error {
 public:
  DivergentSeries(const std::string& series, const std::string& what)
      : Error(what), series_(series) {}
  const std::string& series() const { return series_; }

 private:
  std::string series_;
};

// A theorem hypothesis does not hold for the system; names the failed flag.
class HypothesisViolated : public Error {
 public:
  HypothesisViolated(const std::string& flag, const std::string& what)
      : Error(what), flag_(flag) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

// Operation not implemented for this map kind (e.g. no inverse available).
class UnsupportedMap : public Error {
 public:
  using Error::Error;
};

// Orbit escaped the guard radius; the system is mis-specified.
class OrbitDiverged : public Error {
 public:
  using Error::Error;
};

// Too few usable radii (or points) for a statistical estimate.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// File/format problem.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ifs
