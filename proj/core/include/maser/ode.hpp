#pragma once

#include <functional>

#include "maser/density_matrix.hpp"

namespace maser {

struct OdeOptions {
  /// Local truncation error budget per unit time: a step of size h is
  /// accepted when the embedded error estimate is <= tol * h.
  double tol = 1e-10;
  /// Initial step size; 0 selects an automatic choice.
  double initial_step = 0.0;
  /// Hard cap on accepted + rejected steps (guards against runaway loops).
  long max_steps = 200'000'000;
  /// When set, a trace drift above 10 * tol at the end of the integration is
  /// treated as an error (NonPhysical). Off by default: the integrator also
  /// serves right-hand sides that do not preserve the trace.
  bool check_trace = false;
};

struct OdeResult {
  Matrix4 state;
  double t_final;
  long accepted_steps;
  long rejected_steps;
  /// max |tr(state) - tr(initial state)| observed at accepted steps. For a
  /// trace-preserving right-hand side (any master equation) this measures
  /// accumulated roundoff and stays <= 10 * tol.
  double max_trace_drift;
};

using MatrixRhs = std::function<Matrix4(double, const Matrix4&)>;

/// Adaptive Dormand-Prince 5(4) integrator for matrix-valued ODEs.
/// Throws StepSizeUnderflow when the required step falls below
/// 1e-14 * max(|t|, 1), and NonPhysical when check_trace is set and the
/// trace drift exceeds 10 * tol at the end of the integration.
OdeResult integrate_adaptive(const MatrixRhs& rhs, const Matrix4& rho0,
                             double t0, double t1, const OdeOptions& opts = {});

}  // namespace maser
