#include "maser/synchronization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "maser/errors.hpp"

namespace maser {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNorm = 1.0 / (16.0 * kPi * kPi);

/// Wraps an angle to [-pi, pi].
double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

/// Amplitude/phase form of the three coherence contributions:
/// 16 pi^2 S(x, y) = A cos(x + a) + B cos(y + b) + C cos(x - y + c).
struct CosineForm {
  double amp12, arg12;
  double amp13, arg13;
  double amp23, arg23;

  double scale() const { return amp12 + amp13 + amp23; }

  double value(double x, double y) const {
    return kNorm * (amp12 * std::cos(x + arg12) + amp13 * std::cos(y + arg13) +
                    amp23 * std::cos(x - y + arg23));
  }

  void gradient(double x, double y, double g[2]) const {
    const double s23 = amp23 * std::sin(x - y + arg23);
    g[0] = -amp12 * std::sin(x + arg12) - s23;
    g[1] = -amp13 * std::sin(y + arg13) + s23;
  }

  void hessian(double x, double y, double h[3]) const {  // (h11, h22, h12)
    const double c23 = amp23 * std::cos(x - y + arg23);
    h[0] = -amp12 * std::cos(x + arg12) - c23;
    h[1] = -amp13 * std::cos(y + arg13) - c23;
    h[2] = c23;
  }
};

CosineForm cosine_form(const Matrix4& rho) {
  CosineForm f{};
  f.amp12 = std::abs(rho(1, 2));
  f.arg12 = std::arg(rho(1, 2));
  f.amp13 = std::abs(rho(1, 3));
  f.arg13 = std::arg(rho(1, 3));
  f.amp23 = std::abs(rho(2, 3));
  f.arg23 = std::arg(rho(2, 3));
  return f;
}

}  // namespace

double coupling_ratio(const MaserParams& prm) {
  if (prm.lambda_drive == 0.0)
    throw DivisionByZero("coupling ratio k is undefined at lambda_drive == 0");
  return prm.gamma_h * (1.0 + prm.n_h2) * (1.0 + prm.p) / prm.lambda_drive;
}

std::string to_string(SyncBranch b) {
  switch (b) {
    case SyncBranch::cooperative: return "cooperative";
    case SyncBranch::entrainment_dominant: return "entrainment_dominant";
    case SyncBranch::mutual_coupling_dominant: return "mutual_coupling_dominant";
  }
  return "unknown";
}

SyncBranch classify_branch(const MaserParams& prm) {
  if (prm.n_h2 <= prm.n_c) return SyncBranch::cooperative;
  return coupling_ratio(prm) > 2.0 ? SyncBranch::entrainment_dominant
                                   : SyncBranch::mutual_coupling_dominant;
}

double phase_quasi_distribution(const Matrix4& rho, double phi21, double phi31) {
  return cosine_form(rho).value(phi21, phi31);
}

PhaseGrid phase_distribution(const Matrix4& rho, int grid_size) {
  if (grid_size < 16)
    throw PreconditionViolated("phase-distribution grid size must be >= 16");

  PhaseGrid grid{};
  grid.n = grid_size;
  grid.phi.resize(static_cast<size_t>(grid_size));
  for (int m = 0; m < grid_size; ++m) {
    grid.phi[static_cast<size_t>(m)] = -kPi + 2.0 * kPi * (m + 1) / grid_size;
  }

  const CosineForm f = cosine_form(rho);
  grid.S.resize(grid_size, grid_size);
  for (int i = 0; i < grid_size; ++i) {
    for (int j = 0; j < grid_size; ++j) {
      grid.S(i, j) = f.value(grid.phi[static_cast<size_t>(i)],
                             grid.phi[static_cast<size_t>(j)]);
    }
  }

  const double max_abs = std::max(grid.S.cwiseAbs().maxCoeff(), 1e-300);
  const double mean = grid.S.mean();
  if (std::abs(mean) > 1e-12 * max_abs) {
    std::ostringstream msg;
    msg << "phase distribution grid mean " << mean
        << " violates the zero-mean invariant (max " << max_abs << ")";
    throw NonPhysical(msg.str());
  }
  return grid;
}

double smax_closed_form(const MaserParams& prm, const Matrix4& rho) {
  if (prm.delta != 0.0)
    throw PreconditionViolated("closed-form s_max requires delta == 0");
  if (!prm.drive_is_resonant())
    throw PreconditionViolated("closed-form s_max requires the drive on resonance");

  const double a12 = std::abs(rho(1, 2));
  const double a13 = std::abs(rho(1, 3));
  const double a23 = std::abs(rho(2, 3));

  switch (classify_branch(prm)) {
    case SyncBranch::cooperative:
      return kNorm * (a12 + a13 + a23);
    case SyncBranch::entrainment_dominant:
      return kNorm * (a12 + a13 - a23);
    case SyncBranch::mutual_coupling_dominant: {
      const double k = coupling_ratio(prm);
      return kNorm * (1.0 + 0.5 * k * k) * a23;
    }
  }
  throw PreconditionViolated("unreachable branch");
}

SmaxNumeric smax_numeric(const Matrix4& rho, int scan_grid) {
  if (scan_grid < 16)
    throw PreconditionViolated("scan grid must be >= 16");

  const CosineForm f = cosine_form(rho);
  if (f.scale() < 1e-300) {
    return SmaxNumeric{0.0, {-kPi, -kPi}};
  }

  // Coarse scan; strict comparison keeps the first-visited maximum, which is
  // the smallest phi21 (then smallest phi31) among ties.
  double best = -std::numeric_limits<double>::infinity();
  double bx = -kPi, by = -kPi;
  for (int i = 0; i < scan_grid; ++i) {
    const double x = -kPi + 2.0 * kPi * i / scan_grid;
    for (int j = 0; j < scan_grid; ++j) {
      const double y = -kPi + 2.0 * kPi * j / scan_grid;
      const double v = f.value(x, y);
      if (v > best) {
        best = v;
        bx = x;
        by = y;
      }
    }
  }

  // Damped Newton ascent on the smooth three-cosine landscape.
  const double grad_tol = 1e-10 * f.scale();
  double x = bx, y = by, v = best;
  double mu = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    double g[2];
    f.gradient(x, y, g);
    if (std::max(std::abs(g[0]), std::abs(g[1])) <= grad_tol) break;

    double h[3];
    f.hessian(x, y, h);
    bool moved = false;
    for (int damp = 0; damp < 12; ++damp) {
      const double h11 = h[0] - mu, h22 = h[1] - mu;
      const double det = h11 * h22 - h[2] * h[2];
      double dx, dy;
      if (std::abs(det) > 1e-300) {
        dx = -(h22 * g[0] - h[2] * g[1]) / det;
        dy = -(h11 * g[1] - h[2] * g[0]) / det;
      } else {
        dx = g[0];
        dy = g[1];
      }
      const double xn = x + dx, yn = y + dy;
      const double vn = f.value(xn, yn);
      if (vn >= v) {
        x = xn;
        y = yn;
        v = vn;
        mu *= 0.5;
        moved = true;
        break;
      }
      mu = std::max(2.0 * mu, 1e-6 * f.scale());
    }
    if (!moved) break;
  }

  SmaxNumeric result{};
  result.value = std::max(v, best);
  result.argmax = {wrap_angle(x), wrap_angle(y)};
  return result;
}

SyncResult analyze_synchronization(const MaserParams& prm, const Matrix4& rho) {
  SyncResult res{};
  res.k = coupling_ratio(prm);
  res.branch = classify_branch(prm);

  const SmaxNumeric numeric = smax_numeric(rho);
  res.s_max_numeric = numeric.value;
  res.argmax_phases = numeric.argmax;

  if (prm.delta == 0.0 && prm.drive_is_resonant()) {
    const double closed = smax_closed_form(prm, rho);
    res.s_max_closed = closed;
    const double tol = 1e-6 * std::max(closed, 1e-300);
    if (std::abs(closed - numeric.value) > tol) {
      std::ostringstream msg;
      msg << "closed-form s_max " << closed << " and numeric s_max "
          << numeric.value << " disagree beyond tolerance " << tol;
      throw NonPhysical(msg.str());
    }
  }
  return res;
}

void write_phase_distribution_csv(const PhaseGrid& grid, std::ostream& out) {
  out << "phi21,phi31,S\n";
  char buf[128];
  for (int i = 0; i < grid.n; ++i) {
    for (int j = 0; j < grid.n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n",
                    grid.phi[static_cast<size_t>(i)],
                    grid.phi[static_cast<size_t>(j)], grid.S(i, j));
      out << buf;
    }
  }
}

}  // namespace maser
