#pragma once

#include "maser/density_matrix.hpp"
#include "maser/params.hpp"

namespace maser {

/// Bare level Hamiltonian diag(0, omega1, omega2, omega3).
Matrix4 bare_hamiltonian(const MaserParams& prm);

/// Time-independent Hamiltonian in the frame rotating at the drive frequency
/// W: diag(0, omega1 + W/2, omega2 - W/2, omega3 - W/2) plus the drive
/// coupling lambda_drive (|2><1| + |3><1| + h.c.).
Matrix4 rotating_hamiltonian(const MaserParams& prm);

/// Cold-bath dissipator: rates gamma_c (1 + n_c) on |0><1| and gamma_c n_c on
/// |1><0|, each contributing G (2 c rho c^+ - {c^+ c, rho}).
Matrix4 cold_dissipator(const MaserParams& prm, const Matrix4& rho);

/// Hot-bath dissipator over the 0<->2 and 0<->3 transitions with correlation
/// matrix (P_22 = P_33 = 1, P_23 = P_32 = p). Cross terms (i != j) transfer
/// coherence between the upper levels; the occupation entering each rate is
/// the one of the transition supplying the second (j) operator. Invariant
/// under the rotating-frame transformation.
Matrix4 hot_dissipator(const MaserParams& prm, const Matrix4& rho);

/// d(rho)/dt in the rotating frame: -i[H_rot, rho] + hot + cold dissipators.
Matrix4 generator_rhs(const MaserParams& prm, const Matrix4& rho);

/// d(rho)/dt in the lab frame with the explicitly time-dependent drive
/// lambda_drive e^{-i W t} (|2><1| + |3><1|) + h.c. on top of the bare
/// Hamiltonian and the same dissipators.
Matrix4 lab_frame_rhs(const MaserParams& prm, double t, const Matrix4& rho);

/// Frame change rho_rot = U(t) rho_lab U(t)^+ with U(t) = exp(i t H~) and
/// H~ = diag(0, -W/2, +W/2, +W/2).
Matrix4 to_rotating_frame(const MaserParams& prm, double t, const Matrix4& rho_lab);
Matrix4 to_lab_frame(const MaserParams& prm, double t, const Matrix4& rho_rot);

/// 16x16 matrix L acting on column-major vectorized states:
/// vectorize_state(generator_rhs(rho)) == L * vectorize_state(rho).
/// L preserves trace and Hermiticity to <= 1e-12 and agrees with the direct
/// right-hand side to <= 1e-13 (enforced by tests).
Matrix16 vectorize_generator(const MaserParams& prm);

}  // namespace maser
