#include "maser/model.hpp"

#include <cmath>
#include <complex>

#include "maser/errors.hpp"

namespace maser {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix4 ket_bra(int i, int j) {
  Matrix4 m = Matrix4::Zero();
  m(i, j) = 1.0;
  return m;
}

Matrix4 commutator_rhs(const Matrix4& h, const Matrix4& rho) {
  return -kI * (h * rho - rho * h);
}

/// G * (2 c rho c^+ - c^+ c rho - rho c^+ c)
Matrix4 lindblad_term(double g, const Matrix4& c, const Matrix4& rho) {
  const Matrix4 cd = c.adjoint();
  const Matrix4 cdc = cd * c;
  return g * (2.0 * (c * rho * cd) - cdc * rho - rho * cdc);
}

struct HotRates {
  // occupations per upper level, index 2 and 3
  double n[4];
  // correlation matrix entries over {2,3}
  double corr(int i, int j, double p) const { return i == j ? 1.0 : p; }
};

}  // namespace

Matrix4 bare_hamiltonian(const MaserParams& prm) {
  Matrix4 h = Matrix4::Zero();
  h(1, 1) = prm.omega1;
  h(2, 2) = prm.omega2;
  h(3, 3) = prm.omega3();
  return h;
}

Matrix4 rotating_hamiltonian(const MaserParams& prm) {
  const double w = prm.drive_frequency();
  Matrix4 h = Matrix4::Zero();
  h(1, 1) = prm.omega1 + 0.5 * w;
  h(2, 2) = prm.omega2 - 0.5 * w;
  h(3, 3) = prm.omega3() - 0.5 * w;
  h(2, 1) = h(1, 2) = prm.lambda_drive;
  h(3, 1) = h(1, 3) = prm.lambda_drive;
  return h;
}

Matrix4 cold_dissipator(const MaserParams& prm, const Matrix4& rho) {
  Matrix4 out = lindblad_term(prm.gamma_c * (1.0 + prm.n_c), ket_bra(0, 1), rho);
  out += lindblad_term(prm.gamma_c * prm.n_c, ket_bra(1, 0), rho);
  return out;
}

Matrix4 hot_dissipator(const MaserParams& prm, const Matrix4& rho) {
  const BathOccupations occ = derive_bath_occupations(prm);
  double n[4] = {0.0, 0.0, prm.n_h2, occ.n_h3};

  Matrix4 out = Matrix4::Zero();
  for (int i = 2; i <= 3; ++i) {
    for (int j = 2; j <= 3; ++j) {
      const double corr_ij = (i == j) ? 1.0 : prm.p;
      const double g1_ij = corr_ij * prm.gamma_h * (1.0 + n[j]);
      const double g1_ji = corr_ij * prm.gamma_h * (1.0 + n[i]);
      const double g2_ij = corr_ij * prm.gamma_h * n[j];
      const double g2_ji = corr_ij * prm.gamma_h * n[i];

      // de-excitation channel: lowering operators |0><i|
      const Matrix4 a_i = ket_bra(0, i);
      const Matrix4 a_jd = ket_bra(j, 0);  // (|0><j|)^+
      const Matrix4 sandwich_low = a_i * rho * a_jd;
      out += g1_ij * (sandwich_low - rho * (a_jd * a_i));
      out += g1_ji * (sandwich_low - (a_jd * a_i) * rho);

      // excitation channel: raising operators |i><0|
      const Matrix4 b_i = ket_bra(i, 0);
      const Matrix4 b_jd = ket_bra(0, j);  // (|j><0|)^+
      const Matrix4 sandwich_high = b_i * rho * b_jd;
      out += g2_ij * (sandwich_high - rho * (b_jd * b_i));
      out += g2_ji * (sandwich_high - (b_jd * b_i) * rho);
    }
  }
  return out;
}

Matrix4 generator_rhs(const MaserParams& prm, const Matrix4& rho) {
  return commutator_rhs(rotating_hamiltonian(prm), rho) + hot_dissipator(prm, rho) +
         cold_dissipator(prm, rho);
}

Matrix4 lab_frame_rhs(const MaserParams& prm, double t, const Matrix4& rho) {
  const double w = prm.drive_frequency();
  Matrix4 h = bare_hamiltonian(prm);
  const Complex phase = prm.lambda_drive * std::exp(-kI * (w * t));
  h(2, 1) += phase;
  h(3, 1) += phase;
  h(1, 2) += std::conj(phase);
  h(1, 3) += std::conj(phase);
  return commutator_rhs(h, rho) + hot_dissipator(prm, rho) + cold_dissipator(prm, rho);
}

namespace {

Matrix4 frame_unitary(const MaserParams& prm, double t) {
  const double w = prm.drive_frequency();
  const double phases[4] = {0.0, -0.5 * w, 0.5 * w, 0.5 * w};
  Matrix4 u = Matrix4::Zero();
  for (int i = 0; i < 4; ++i) u(i, i) = std::exp(kI * (phases[i] * t));
  return u;
}

}  // namespace

Matrix4 to_rotating_frame(const MaserParams& prm, double t, const Matrix4& rho_lab) {
  const Matrix4 u = frame_unitary(prm, t);
  return u * rho_lab * u.adjoint();
}

Matrix4 to_lab_frame(const MaserParams& prm, double t, const Matrix4& rho_rot) {
  const Matrix4 u = frame_unitary(prm, t);
  return u.adjoint() * rho_rot * u;
}

Matrix16 vectorize_generator(const MaserParams& prm) {
  Matrix16 gen;
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < 4; ++r) {
      Matrix4 basis = Matrix4::Zero();
      basis(r, c) = 1.0;
      gen.col(4 * c + r) = vectorize_state(generator_rhs(prm, basis));
    }
  }
  return gen;
}

}  // namespace maser
