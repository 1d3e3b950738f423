#include <cmath>
#include <random>

#include <doctest.h>

#include "maser/density_matrix.hpp"
#include "maser/model.hpp"
#include "maser/params.hpp"
#include "test_helpers.hpp"

using maser::Complex;
using maser::MaserParams;
using maser::Matrix4;
using testutil::base_params;
using testutil::max_abs_diff;

TEST_SUITE("model") {

TEST_CASE("bare Hamiltonian is the level diagonal") {
  const Matrix4 h = maser::bare_hamiltonian(base_params(0.05));
  Matrix4 expected = Matrix4::Zero();
  expected(1, 1) = 1.0;
  expected(2, 2) = 3.0;
  expected(3, 3) = 3.05;
  CHECK(max_abs_diff(h, expected) == 0.0);
}

TEST_CASE("rotating-frame Hamiltonian entries") {
  const MaserParams prm = base_params(0.05);
  const Matrix4 h = maser::rotating_hamiltonian(prm);
  const double w = prm.drive_frequency();  // 2.025
  CHECK(h(0, 0) == Complex(0.0));
  CHECK(h(1, 1) == Complex(1.0 + 0.5 * w));
  CHECK(h(2, 2) == Complex(3.0 - 0.5 * w));
  CHECK(h(3, 3) == Complex(3.05 - 0.5 * w));
  CHECK(h(2, 1) == Complex(0.05));
  CHECK(h(3, 1) == Complex(0.05));
  CHECK(h(1, 2) == Complex(0.05));
  CHECK(max_abs_diff(h, h.adjoint()) == 0.0);
  // On resonance the two driven gaps are degenerate at +-delta/4 around the
  // dressed level 1.
  CHECK(std::abs((h(2, 2) - h(1, 1)).real() + 0.025) < 1e-15);
  CHECK(std::abs((h(3, 3) - h(1, 1)).real() - 0.025) < 1e-15);
}

TEST_CASE("cold dissipator on the |1><1| state") {
  const MaserParams prm = base_params();
  Matrix4 rho = Matrix4::Zero();
  rho(1, 1) = 1.0;
  const Matrix4 d = maser::cold_dissipator(prm, rho);
  // Pure decay: 2 gamma_c (1 + n_c) (|0><0| - |1><1|).
  const double rate = 2.0 * prm.gamma_c * (1.0 + prm.n_c);
  Matrix4 expected = Matrix4::Zero();
  expected(0, 0) = rate;
  expected(1, 1) = -rate;
  CHECK(max_abs_diff(d, expected) < 1e-15);
}

TEST_CASE("generator preserves trace and Hermiticity") {
  const MaserParams prm = base_params(0.05);
  std::mt19937_64 gen(11);
  for (int i = 0; i < 25; ++i) {
    const Matrix4 h = testutil::random_hermitian(gen);
    const Matrix4 rhs = maser::generator_rhs(prm, h);
    CHECK(std::abs(rhs.trace()) < 1e-12);
    CHECK(max_abs_diff(rhs, rhs.adjoint()) < 1e-12);
  }
}

TEST_CASE("hot dissipator is invariant under the rotating-frame map") {
  const MaserParams prm = base_params(0.05, 0.5, 0.7);
  std::mt19937_64 gen(7);
  const Matrix4 h = testutil::random_hermitian(gen);
  const double t = 1.37;
  // D_hot(U rho U^+) == U D_hot(rho) U^+: the 0<->{2,3} jump operators only
  // pick up phases that cancel inside each sandwich term.
  const Matrix4 lhs =
      maser::hot_dissipator(prm, maser::to_rotating_frame(prm, t, h));
  const Matrix4 rhs =
      maser::to_rotating_frame(prm, t, maser::hot_dissipator(prm, h));
  CHECK(max_abs_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("frame maps invert each other and reduce to identity at t = 0") {
  const MaserParams prm = base_params(0.05);
  std::mt19937_64 gen(3);
  const Matrix4 h = testutil::random_hermitian(gen);
  CHECK(max_abs_diff(maser::to_rotating_frame(prm, 0.0, h), h) < 1e-15);
  const Matrix4 roundtrip =
      maser::to_lab_frame(prm, 2.3, maser::to_rotating_frame(prm, 2.3, h));
  CHECK(max_abs_diff(roundtrip, h) < 1e-14);
}

TEST_CASE("vectorized generator agrees with the direct right-hand side") {
  const MaserParams prm = base_params(0.05, 0.3, -0.4);
  const maser::Matrix16 L = maser::vectorize_generator(prm);
  std::mt19937_64 gen(17);
  for (int i = 0; i < 25; ++i) {
    const Matrix4 h = testutil::random_hermitian(gen);
    const Matrix4 direct = maser::generator_rhs(prm, h);
    const Matrix4 mapped =
        maser::unvectorize_state(L * maser::vectorize_state(h));
    CHECK(max_abs_diff(direct, mapped) < 1e-13);
  }
}

TEST_CASE("lab-frame drive reduces to the rotating coupling at t = 0") {
  const MaserParams prm = base_params(0.05);
  std::mt19937_64 gen(29);
  const Matrix4 h = testutil::random_hermitian(gen);
  // At t = 0 the two right-hand sides differ only by the commutator with the
  // frame-shift diagonal diag(0, -W/2, W/2, W/2).
  const Matrix4 lab = maser::lab_frame_rhs(prm, 0.0, h);
  const Matrix4 rot = maser::generator_rhs(prm, h);
  const double w = prm.drive_frequency();
  Matrix4 shift = Matrix4::Zero();
  shift(1, 1) = -0.5 * w;
  shift(2, 2) = 0.5 * w;
  shift(3, 3) = 0.5 * w;
  const Matrix4 expected_diff = Complex(0, 1) * (shift * h - h * shift);
  CHECK(max_abs_diff(rot - lab, expected_diff) < 1e-13);
}

TEST_CASE("vectorization round trip") {
  std::mt19937_64 gen(41);
  const Matrix4 h = testutil::random_hermitian(gen);
  CHECK(max_abs_diff(maser::unvectorize_state(maser::vectorize_state(h)), h) ==
        0.0);
  // Column-major component order: (r, c) -> 4 c + r.
  const maser::Vector16 v = maser::vectorize_state(h);
  CHECK(v(4 * 2 + 1) == h(1, 2));
  CHECK(v(4 * 0 + 3) == h(3, 0));
}

}  // TEST_SUITE
