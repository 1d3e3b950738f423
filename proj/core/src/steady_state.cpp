#include "maser/steady_state.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "maser/errors.hpp"
#include "maser/ode.hpp"

namespace maser {

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::analytic: return "analytic";
    case SolveMethod::nullspace: return "nullspace";
    case SolveMethod::evolve: return "evolve";
  }
  return "unknown";
}

std::string to_string(SolverChoice c) {
  switch (c) {
    case SolverChoice::automatic: return "auto";
    case SolverChoice::analytic: return "analytic";
    case SolverChoice::nullspace: return "nullspace";
    case SolverChoice::evolve: return "evolve";
  }
  return "unknown";
}

double generator_residual(const MaserParams& prm, const Matrix4& rho) {
  return vectorize_state(generator_rhs(prm, rho)).cwiseAbs().maxCoeff();
}

namespace {

double residual_threshold(const Matrix16& gen) {
  return 1e-10 * gen.cwiseAbs().maxCoeff();
}

void enforce_residual(double residual, double threshold, const char* method) {
  if (residual > threshold) {
    std::ostringstream msg;
    msg << method << " steady state has stationarity residual " << residual
        << " above the acceptance threshold " << threshold;
    throw NonPhysical(msg.str());
  }
}

bool analytic_domain(const MaserParams& prm) {
  return prm.delta == 0.0 && prm.drive_is_resonant() && std::abs(prm.p) < 1.0;
}

ClosedFormCheck closed_form_crosscheck(const MaserParams& prm, double rho11,
                                       double rho22, double im_rho12, double rho23) {
  const double lam = prm.lambda_drive, p = prm.p, nh = prm.n_h2, nc = prm.n_c;
  const double gh = prm.gamma_h, gc = prm.gamma_c;
  const double xc = gc * (1.0 + nc);
  const double xh = gh * (1.0 + nh);

  const double f_denom =
      2.0 * lam * lam *
          (gc * (1.0 + 3.0 * nc + 2.0 * nh + 4.0 * nh * nc) +
           xh * (1.0 + p) * (1.0 + 4.0 * nh)) +
      gc * xh * (1.0 + p) * (1.0 + 3.0 * nh + 2.0 * nc + 4.0 * nh * nc) *
          (xc + xh * (1.0 + p));

  const double rho11_ref =
      (1.0 + nh) *
      (2.0 * lam * lam * (nc * gc + gh * (1.0 + p) * nh) +
       xh * (1.0 + p) * gc * nc * (xc + xh * (1.0 + p))) /
      f_denom;
  // Known-inconsistent reference expression, kept for diagnostics only.
  const double rho22_ref =
      (lam * lam * (nh + nc + 2.0 * nh * nc + 2.0 * xh * nh * (1.0 + p)) +
       xc * xh * (1.0 + p) * nh * (xc + xh * (1.0 + p))) /
      f_denom;
  const double im_rho12_ref = lam * gc * xh * (1.0 + p) * (nc - nh) / f_denom;
  const double rho23_ref = lam * lam * gc * (nc - nh) / f_denom;

  ClosedFormCheck check{};
  check.all_consistent = true;
  auto add = [&check](const std::string& name, double solved, double reference) {
    ClosedFormEntry entry{};
    entry.name = name;
    entry.solved = solved;
    entry.reference = reference;
    const double scale =
        std::max({std::abs(solved), std::abs(reference), 1e-300});
    entry.relative_mismatch = std::abs(solved - reference) / scale;
    entry.consistent = entry.relative_mismatch <= 1e-9;
    if (!entry.consistent) {
      check.all_consistent = false;
      // The full per-entry data is returned to the caller; the stderr notice
      // exists so an interactive user sees the discrepancy at least once, and
      // is logged once per process to keep batch runs (sweeps, benchmarks)
      // readable.
      static std::atomic<bool> logged{false};
      if (!logged.exchange(true)) {
        std::cerr << "closed-form cross-check: " << name << " solved=" << solved
                  << " reference=" << reference << " (relative mismatch "
                  << entry.relative_mismatch
                  << "); further cross-check notices suppressed\n";
      }
    }
    check.entries.push_back(std::move(entry));
  };

  add("rho11", rho11, rho11_ref);
  add("rho22", rho22, rho22_ref);
  add("im_rho12", im_rho12, im_rho12_ref);
  add("rho23", rho23, rho23_ref);
  return check;
}

}  // namespace

SteadyStateSolution analytic_steady_state(const MaserParams& prm) {
  prm.validate();
  if (prm.delta != 0.0)
    throw PreconditionViolated("analytic steady state requires delta == 0");
  if (!prm.drive_is_resonant())
    throw PreconditionViolated(
        "analytic steady state requires the drive on resonance");
  if (std::abs(prm.p) >= 1.0)
    throw PreconditionViolated("analytic steady state requires |p| < 1");

  const double lam = prm.lambda_drive, p = prm.p, nh = prm.n_h2, nc = prm.n_c;
  const double gh = prm.gamma_h, gc = prm.gamma_c;
  const double xc = gc * (1.0 + nc);
  const double xh = gh * (1.0 + nh);

  // Unknowns x = (rho11, rho22, A = Im rho12, r = rho23); rho00 eliminated via
  // rho00 = 1 - rho11 - 2 rho22.
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  Eigen::Vector4d b = Eigen::Vector4d::Zero();

  // population balance of level 1
  m(0, 0) = -xc - gc * nc;
  m(0, 1) = -2.0 * gc * nc;
  m(0, 2) = -2.0 * lam;
  b(0) = -gc * nc;

  // coherence balance between the drive and the relaxation of rho12
  m(1, 0) = -lam;
  m(1, 1) = lam;
  m(1, 2) = xc + xh * (1.0 + p);
  m(1, 3) = lam;
  b(1) = 0.0;

  // population balance of level 2
  m(2, 0) = gh * nh;
  m(2, 1) = xh + 2.0 * gh * nh;
  m(2, 2) = -lam;
  m(2, 3) = xh * p;
  b(2) = gh * nh;

  // balance of the upper-level coherence rho23
  m(3, 0) = gh * p * nh;
  m(3, 1) = xh * p + 2.0 * gh * p * nh;
  m(3, 2) = -lam;
  m(3, 3) = xh;
  b(3) = gh * p * nh;

  Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
  if (!lu.isInvertible())
    throw DarkState("reduced steady-state system is singular", 0, {});
  const Eigen::Vector4d x = lu.solve(b);

  const double rho11 = x(0), rho22 = x(1), im12 = x(2), r23 = x(3);

  Matrix4 rho = Matrix4::Zero();
  rho(0, 0) = 1.0 - rho11 - 2.0 * rho22;
  rho(1, 1) = rho11;
  rho(2, 2) = rho22;
  rho(3, 3) = rho22;
  rho(1, 2) = Complex(0.0, im12);
  rho(2, 1) = Complex(0.0, -im12);
  rho(1, 3) = Complex(0.0, im12);
  rho(3, 1) = Complex(0.0, -im12);
  rho(2, 3) = r23;
  rho(3, 2) = r23;

  const Matrix16 gen = vectorize_generator(prm);
  SteadyStateSolution sol{};
  sol.rho = rho;
  sol.residual = (gen * vectorize_state(rho)).cwiseAbs().maxCoeff();
  sol.method = SolveMethod::analytic;
  sol.nullspace_dim = 1;
  sol.closed_form = closed_form_crosscheck(prm, rho11, rho22, im12, r23);
  enforce_residual(sol.residual, residual_threshold(gen), "analytic");
  validate_density_matrix(sol.rho);
  return sol;
}

SteadyStateSolution numeric_steady_state(const MaserParams& prm) {
  prm.validate();
  const Matrix16 gen = vectorize_generator(prm);

  Eigen::JacobiSVD<Matrix16> svd(gen, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma(0);

  int kernel_dim = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= 1e-10 * sigma_max) ++kernel_dim;
  }
  if (kernel_dim == 0) {
    throw NonPhysical(
        "the vectorized generator has no kernel within tolerance; "
        "no stationary state found");
  }
  if (kernel_dim > 1) {
    std::vector<Matrix4> basis;
    basis.reserve(static_cast<size_t>(kernel_dim));
    for (int i = 16 - kernel_dim; i < 16; ++i) {
      basis.push_back(unvectorize_state(svd.matrixV().col(i)));
    }
    std::ostringstream msg;
    msg << "stationary state is not unique: generator kernel has dimension "
        << kernel_dim;
    throw DarkState(msg.str(), kernel_dim, std::move(basis));
  }

  Matrix4 rho = unvectorize_state(svd.matrixV().col(15));
  rho = 0.5 * (rho + rho.adjoint().eval());
  const double trace = rho.trace().real();
  if (std::abs(trace) < 1e-8) {
    throw DivisionByZero(
        "kernel vector is traceless; cannot normalize to a state");
  }
  rho /= trace;

  SteadyStateSolution sol{};
  sol.rho = rho;
  sol.residual = (gen * vectorize_state(rho)).cwiseAbs().maxCoeff();
  sol.method = SolveMethod::nullspace;
  sol.nullspace_dim = kernel_dim;
  enforce_residual(sol.residual, residual_threshold(gen), "nullspace");
  validate_density_matrix(sol.rho);
  return sol;
}

namespace {

/// 50 / (slowest relaxation rate), capped at 1e6 / omega1.
double default_horizon(const MaserParams& prm, const Matrix16& gen) {
  Eigen::ComplexEigenSolver<Matrix16> es(gen, /*computeEigenvectors=*/false);
  const auto& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  double slowest = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    const double re = ev(i).real();
    if (re < -1e-12 * scale) {
      const double rate = -re;
      if (slowest == 0.0 || rate < slowest) slowest = rate;
    }
  }
  const double cap = 1e6 / prm.omega1;
  if (slowest <= 0.0) return cap;
  return std::min(50.0 / slowest, cap);
}

}  // namespace

SteadyStateSolution evolve_to_steady_state(const MaserParams& prm,
                                           const EvolveOptions& opts) {
  prm.validate();
  const Matrix16 gen = vectorize_generator(prm);
  const double threshold = residual_threshold(gen);

  const Matrix4 rho0 = opts.rho0 ? *opts.rho0 : Matrix4(0.25 * Matrix4::Identity());
  const bool automatic = !opts.t_final.has_value();
  const double horizon = opts.t_final ? *opts.t_final : default_horizon(prm, gen);
  if (!(horizon > 0.0))
    throw PreconditionViolated("evolution horizon must be positive");

  const auto rhs = [&prm](double, const Matrix4& rho) {
    return generator_rhs(prm, rho);
  };

  double tol = opts.tol;
  SteadyStateSolution sol{};
  sol.method = SolveMethod::evolve;
  sol.nullspace_dim = 0;

  for (int attempt = 0;; ++attempt) {
    OdeOptions ode_opts{};
    ode_opts.tol = tol;
    ode_opts.check_trace = true;
    const OdeResult run = integrate_adaptive(rhs, rho0, 0.0, horizon, ode_opts);
    sol.rho = 0.5 * (run.state + run.state.adjoint().eval());
    sol.rho /= sol.rho.trace().real();
    sol.residual = (gen * vectorize_state(sol.rho)).cwiseAbs().maxCoeff();

    // In automatic mode the residual contract is enforced by tightening the
    // integrator tolerance (the residual is integration-error dominated once
    // the horizon covers the slowest relaxation time).
    if (!automatic || sol.residual <= threshold) break;
    if (attempt >= 2 || tol <= 1e-13) {
      enforce_residual(sol.residual, threshold, "evolve");
      break;
    }
    tol = std::max(tol / 100.0, 1e-13);
  }

  validate_density_matrix(sol.rho);
  return sol;
}

SteadyStateSolution solve_steady_state(const MaserParams& prm, SolverChoice choice) {
  switch (choice) {
    case SolverChoice::analytic:
      return analytic_steady_state(prm);
    case SolverChoice::nullspace:
      return numeric_steady_state(prm);
    case SolverChoice::evolve:
      return evolve_to_steady_state(prm);
    case SolverChoice::automatic:
      break;
  }
  if (analytic_domain(prm)) return analytic_steady_state(prm);
  return numeric_steady_state(prm);
}

}  // namespace maser
