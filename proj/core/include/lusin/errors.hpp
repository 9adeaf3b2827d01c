#pragma once

#include <stdexcept>
#include <string>

namespace lusin {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point does not belong to the space it was handed to.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument is outside its admissible range (epsilon <= 0, window == 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A region or exhaustion descriptor is malformed.
class DescriptorError : public Error {
 public:
  using Error::Error;
};

/// The truncated max defining g did not settle before the configured depth.
class DepthExhaustedError : public Error {
 public:
  DepthExhaustedError(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}

  // g lies in [lower, upper] when the error is raised.
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

class MapError : public Error {
 public:
  using Error::Error;
};

/// A neighborhood test captured no samples at any radius.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// Too few samples survive at a stratification level to estimate it.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, int level) : Error(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// A point handed to a stratum metric sits on the stratum boundary.
class BoundaryContactError : public Error {
 public:
  using Error::Error;
};

/// The hypotheses of a construction do not hold for the given map.
class ScopeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lusin
