#include <cmath>
#include <random>

#include <doctest.h>

#include "maser/errors.hpp"
#include "maser/model.hpp"
#include "maser/ode.hpp"
#include "maser/params.hpp"
#include "test_helpers.hpp"

using maser::Complex;
using maser::Matrix4;
using maser::OdeOptions;
using maser::OdeResult;
using testutil::base_params;
using testutil::max_abs_diff;

TEST_SUITE("ode") {

TEST_CASE("exponential decay reproduces exp(-t)") {
  std::mt19937_64 gen(5);
  const Matrix4 y0 = testutil::random_hermitian(gen);
  const auto rhs = [](double, const Matrix4& y) { return Matrix4(-y); };
  OdeOptions opts{};
  opts.tol = 1e-10;
  const OdeResult res = maser::integrate_adaptive(rhs, y0, 0.0, 5.0, opts);
  CHECK(res.t_final == 5.0);
  CHECK(res.accepted_steps > 0);
  CHECK(max_abs_diff(res.state, Matrix4(std::exp(-5.0) * y0)) < 1e-8);
}

TEST_CASE("explicitly time-dependent right-hand side") {
  Matrix4 c = Matrix4::Zero();
  c(0, 1) = Complex(0.3, -0.2);
  c(1, 0) = Complex(0.3, 0.2);
  c(2, 2) = 1.0;
  const Matrix4 y0 = Matrix4::Identity();
  const auto rhs = [&c](double t, const Matrix4&) {
    return Matrix4(std::cos(t) * c);
  };
  // y(t) = y0 + sin(t) c.
  const OdeResult res = maser::integrate_adaptive(rhs, y0, 0.0, 2.5);
  CHECK(max_abs_diff(res.state, Matrix4(y0 + std::sin(2.5) * c)) < 1e-8);
}

TEST_CASE("unitary rotation keeps populations and rotates coherence phases") {
  Matrix4 h = Matrix4::Zero();
  h(1, 1) = 1.0;
  h(2, 2) = 2.5;
  Matrix4 y0 = Matrix4::Zero();
  y0(0, 0) = 0.5;
  y0(1, 1) = 0.3;
  y0(2, 2) = 0.2;
  y0(1, 2) = Complex(0.1, 0.05);
  y0(2, 1) = std::conj(y0(1, 2));
  const auto rhs = [&h](double, const Matrix4& y) {
    return Matrix4(Complex(0, -1) * (h * y - y * h));
  };
  const double t = 3.0;
  const OdeResult res = maser::integrate_adaptive(rhs, y0, 0.0, t);
  CHECK(std::abs(res.state(0, 0) - y0(0, 0)) < 1e-9);
  CHECK(std::abs(res.state(1, 1) - y0(1, 1)) < 1e-9);
  // rho_12(t) = e^{-i (E1 - E2) t} rho_12(0).
  const Complex expected = std::exp(Complex(0, -1) * (1.0 - 2.5) * t) * y0(1, 2);
  CHECK(std::abs(res.state(1, 2) - expected) < 1e-9);
  CHECK(res.max_trace_drift <= 10 * 1e-10);
}

TEST_CASE("master-equation evolution preserves the trace") {
  const maser::MaserParams prm = base_params(0.05);
  Matrix4 rho0 = Matrix4::Zero();
  rho0(0, 0) = 1.0;
  const auto rhs = [&prm](double, const Matrix4& rho) {
    return maser::generator_rhs(prm, rho);
  };
  OdeOptions opts{};
  opts.tol = 1e-10;
  const OdeResult res = maser::integrate_adaptive(rhs, rho0, 0.0, 100.0, opts);
  CHECK(std::abs(res.state.trace().real() - 1.0) <= 10 * opts.tol);
  CHECK(res.max_trace_drift <= 10 * opts.tol);
  CHECK(max_abs_diff(res.state, res.state.adjoint()) < 1e-9);
}

TEST_CASE("finite-time blow-up triggers step-size underflow") {
  const Matrix4 y0 = Matrix4::Identity();
  // y' = y / (1 - t) diverges at t = 1; the controller must give up rather
  // than step across the singularity.
  const auto rhs = [](double t, const Matrix4& y) {
    return Matrix4(y / (1.0 - t));
  };
  CHECK_THROWS_AS(maser::integrate_adaptive(rhs, y0, 0.0, 2.0),
                  maser::StepSizeUnderflow);
}

TEST_CASE("step budget is enforced") {
  const Matrix4 y0 = Matrix4::Identity();
  const auto rhs = [](double, const Matrix4& y) { return Matrix4(-y); };
  OdeOptions opts{};
  opts.tol = 1e-13;
  opts.initial_step = 1e-6;
  opts.max_steps = 3;
  CHECK_THROWS_AS(maser::integrate_adaptive(rhs, y0, 0.0, 1000.0, opts),
                  maser::StepSizeUnderflow);
}

TEST_CASE("tighter tolerance gives a smaller error") {
  std::mt19937_64 gen(19);
  const Matrix4 y0 = testutil::random_hermitian(gen);
  const auto rhs = [](double t, const Matrix4& y) {
    return Matrix4(-std::cos(t) * y);
  };
  const Matrix4 exact = std::exp(-std::sin(4.0)) * y0;
  OdeOptions loose{};
  loose.tol = 1e-5;
  OdeOptions tight{};
  tight.tol = 1e-11;
  const double err_loose =
      max_abs_diff(maser::integrate_adaptive(rhs, y0, 0.0, 4.0, loose).state,
                   exact);
  const double err_tight =
      max_abs_diff(maser::integrate_adaptive(rhs, y0, 0.0, 4.0, tight).state,
                   exact);
  CHECK(err_tight < err_loose);
  CHECK(err_tight < 1e-9);
}

}  // TEST_SUITE
