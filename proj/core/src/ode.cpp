#include "maser/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maser/errors.hpp"

namespace maser {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0, kC5 = 8.0 / 9.0;

constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
// 5th-order solution weights (also the last stage's coefficients).
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// Embedded 4th-order weights.
constexpr double kE1 = 5179.0 / 57600.0, kE3 = 7571.0 / 16695.0,
                 kE4 = 393.0 / 640.0, kE5 = -92097.0 / 339200.0,
                 kE6 = 187.0 / 2100.0, kE7 = 1.0 / 40.0;

double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

OdeResult integrate_adaptive(const MatrixRhs& rhs, const Matrix4& rho0, double t0,
                             double t1, const OdeOptions& opts) {
  if (!(t1 > t0)) throw PreconditionViolated("integration requires t1 > t0");
  if (!(opts.tol > 0.0)) throw PreconditionViolated("integrator tolerance must be positive");

  OdeResult result{};
  result.state = rho0;
  result.t_final = t0;
  const Complex trace0 = rho0.trace();
  result.max_trace_drift = 0.0;

  double t = t0;
  Matrix4 y = rho0;
  Matrix4 k1 = rhs(t, y);

  double h = opts.initial_step;
  if (h <= 0.0) {
    const double scale = std::max(max_abs(k1), 1e-8);
    h = std::min(0.1 * (t1 - t0), std::pow(opts.tol / scale, 0.2));
    h = std::max(h, 1e-10 * (t1 - t0));
  }

  long steps = 0;
  while (t < t1) {
    if (++steps > opts.max_steps)
      throw StepSizeUnderflow("integrator exceeded its step budget");
    h = std::min(h, t1 - t);
    if (h < 1e-14 * std::max(std::abs(t), 1.0)) {
      std::ostringstream msg;
      msg << "step size underflow at t = " << t << " (h = " << h << ")";
      throw StepSizeUnderflow(msg.str());
    }

    const Matrix4 k2 = rhs(t + kC2 * h, y + h * (kA21 * k1));
    const Matrix4 k3 = rhs(t + kC3 * h, y + h * (kA31 * k1 + kA32 * k2));
    const Matrix4 k4 = rhs(t + kC4 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    const Matrix4 k5 =
        rhs(t + kC5 * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    const Matrix4 k6 = rhs(
        t + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
    const Matrix4 y5 =
        y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const Matrix4 k7 = rhs(t + h, y5);
    const Matrix4 y4 =
        y + h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

    const double err = max_abs(y5 - y4);
    const double budget = opts.tol * h;  // local error per unit time

    if (err <= budget) {
      t += h;
      y = y5;
      k1 = k7;  // first-same-as-last
      ++result.accepted_steps;
      result.max_trace_drift =
          std::max(result.max_trace_drift, std::abs(y.trace() - trace0));
    } else {
      ++result.rejected_steps;
    }

    const double shrink =
        err > 0.0 ? 0.9 * std::pow(budget / err, 0.2) : 5.0;
    h *= std::clamp(shrink, 0.2, 5.0);
  }

  result.state = y;
  result.t_final = t;

  if (opts.check_trace && result.max_trace_drift > 10.0 * opts.tol) {
    std::ostringstream msg;
    msg << "trace drift " << result.max_trace_drift
        << " exceeds 10 * tol = " << 10.0 * opts.tol;
    throw NonPhysical(msg.str());
  }
  return result;
}

}  // namespace maser
