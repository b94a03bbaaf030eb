#pragma once

#include <stdexcept>
#include <string>

namespace gouest {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (x <= 0 for a density, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole of a meromorphic function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the region where the declared accuracy holds.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Series sampler hit its term cap before reaching the tail tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Weighted least-squares normalizer is zero.
class DegenerateWeights : public Error {
 public:
  using Error::Error;
};

/// Input grid does not match the grid implied by the configuration.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (model parameters, tuning inputs, files).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gouest
