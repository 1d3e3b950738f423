#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace maser {

/// Base class of every domain error thrown by this library.
class MaserError : public std::runtime_error {
 public:
  explicit MaserError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition of the called operation does not hold.
class PreconditionViolated : public MaserError {
 public:
  using MaserError::MaserError;
};

/// A state or result fails a physicality contract (Hermiticity, unit trace,
/// positivity, or a stationarity residual).
class NonPhysical : public MaserError {
 public:
  using MaserError::MaserError;
};

/// The generator kernel is degenerate: the stationary state is not unique.
/// Carries the kernel dimension and an (unnormalized) matrix basis of the
/// kernel so callers can inspect the degenerate manifold. No representative
/// is ever picked from a degenerate kernel.
class DarkState : public MaserError {
 public:
  DarkState(const std::string& what, int dim, std::vector<Eigen::Matrix4cd> basis)
      : MaserError(what), kernel_dim(dim), kernel_basis(std::move(basis)) {}

  int kernel_dim;
  std::vector<Eigen::Matrix4cd> kernel_basis;
};

/// The adaptive integrator cannot meet its error target with a representable
/// step size.
class StepSizeUnderflow : public MaserError {
 public:
  using MaserError::MaserError;
};

/// An engine-only (or refrigerator-only) quantity was requested outside its
/// operating regime.
class RegimeMismatch : public MaserError {
 public:
  using MaserError::MaserError;
};

/// A ratio whose denominator vanishes was requested.
class DivisionByZero : public MaserError {
 public:
  using MaserError::MaserError;
};

/// The phase quasi-distribution is flat (all coherences vanish), so
/// synchronization-normalized ratios are undefined.
class DegenerateSync : public MaserError {
 public:
  using MaserError::MaserError;
};

/// The coherent-heat bound degenerates at p = 0 (its conversion factor
/// vanishes together with the coherent current).
class UndefinedForZeroP : public MaserError {
 public:
  using MaserError::MaserError;
};

/// A summary was requested over a data set that cannot support it.
class InsufficientData : public MaserError {
 public:
  using MaserError::MaserError;
};

/// Malformed configuration input (JSON schema, CLI values, axis ranges).
class ConfigError : public MaserError {
 public:
  using MaserError::MaserError;
};

/// Filesystem failure; carries the offending path.
class IoError : public MaserError {
 public:
  IoError(const std::string& what, std::string path_)
      : MaserError(what + ": " + path_), path(std::move(path_)) {}

  std::string path;
};

}  // namespace maser
