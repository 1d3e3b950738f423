#include "maser/thermodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maser/errors.hpp"
#include "maser/model.hpp"

namespace maser {

double ThermoCurrents::scale() const {
  return std::max({std::abs(power), std::abs(q_hot()), std::abs(q_cold)});
}

ThermoCurrents steady_currents(const MaserParams& prm, const Matrix4& rho) {
  const BathOccupations occ = derive_bath_occupations(prm);
  const double w[4] = {0.0, prm.omega1, prm.omega2, prm.omega3()};
  const double nh[4] = {0.0, 0.0, prm.n_h2, occ.n_h3};

  ThermoCurrents c{};
  c.power = 0.0;
  c.q_hot_inc = 0.0;
  for (int j = 2; j <= 3; ++j) {
    c.power += 2.0 * prm.lambda_drive * (w[j] - prm.omega1) * rho(1, j).imag();
    c.q_hot_inc += 2.0 * prm.gamma_h * w[j] *
                   (nh[j] * rho(0, 0).real() - (1.0 + nh[j]) * rho(j, j).real());
  }
  c.q_hot_coh = -2.0 * prm.gamma_h *
                ((1.0 + nh[2]) * w[3] + (1.0 + nh[3]) * w[2]) * prm.p *
                rho(2, 3).real();
  c.q_cold = 2.0 * prm.omega1 * prm.gamma_c *
             (prm.n_c * rho(0, 0).real() - (1.0 + prm.n_c) * rho(1, 1).real());
  return c;
}

double bath_energy_flux(const MaserParams& prm, const Matrix4& rho, Bath bath) {
  const Matrix4 diss =
      bath == Bath::hot ? hot_dissipator(prm, rho) : cold_dissipator(prm, rho);
  return (diss * bare_hamiltonian(prm)).trace().real();
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::engine: return "engine";
    case Regime::refrigerator: return "refrigerator";
    case Regime::other: return "other";
  }
  return "unknown";
}

namespace {

int sign_with_deadband(double x) {
  if (std::abs(x) <= 1e-14) return 0;
  return x > 0.0 ? 1 : -1;
}

}  // namespace

Regime classify_regime(const ThermoCurrents& c) {
  const int sh = sign_with_deadband(c.q_hot());
  const int sc = sign_with_deadband(c.q_cold);
  const int sp = sign_with_deadband(c.power);
  if (sh > 0 && sc < 0 && sp < 0) return Regime::engine;
  if (sh < 0 && sc > 0 && sp > 0) return Regime::refrigerator;
  return Regime::other;
}

EfficiencyReport efficiency_and_cop(const MaserParams& prm, const ThermoCurrents& c) {
  EfficiencyReport rep{};
  const Regime regime = classify_regime(c);
  if (regime == Regime::engine) rep.eta = -c.power / c.q_hot();
  if (regime == Regime::refrigerator) rep.chi = c.q_cold / c.power;

  const BathOccupations occ = derive_bath_occupations(prm);
  if (occ.T_h > 0.0) {
    rep.eta_carnot = 1.0 - occ.T_c / occ.T_h;
  } else {
    rep.eta_carnot = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

double engine_efficiency(const ThermoCurrents& c) {
  if (classify_regime(c) != Regime::engine)
    throw RegimeMismatch("engine efficiency requested outside the engine regime");
  return -c.power / c.q_hot();
}

double refrigerator_cop(const ThermoCurrents& c) {
  if (classify_regime(c) != Regime::refrigerator)
    throw RegimeMismatch("COP requested outside the refrigerator regime");
  return c.q_cold / c.power;
}

ThermoCurrents analytic_currents(const MaserParams& prm) {
  prm.validate();
  if (prm.delta != 0.0)
    throw PreconditionViolated("closed-form currents require delta == 0");
  if (!prm.drive_is_resonant())
    throw PreconditionViolated("closed-form currents require the drive on resonance");
  if (std::abs(prm.p) >= 1.0)
    throw PreconditionViolated("closed-form currents require |p| < 1");

  const double lam = prm.lambda_drive, p = prm.p, nh = prm.n_h2, nc = prm.n_c;
  const double gc = prm.gamma_c;
  const double xc = gc * (1.0 + nc);
  const double xh = prm.gamma_h * (1.0 + nh);

  const double f_denom =
      2.0 * lam * lam *
          (gc * (1.0 + 3.0 * nc + 2.0 * nh + 4.0 * nh * nc) +
           xh * (1.0 + p) * (1.0 + 4.0 * nh)) +
      gc * xh * (1.0 + p) * (1.0 + 3.0 * nh + 2.0 * nc + 4.0 * nh * nc) *
          (xc + xh * (1.0 + p));

  const double common = 4.0 * lam * lam * gc * xh * (nh - nc) / f_denom;

  ThermoCurrents c{};
  c.power = -(prm.omega2 - prm.omega1) * (1.0 + p) * common;
  c.q_cold = -prm.omega1 * (1.0 + p) * common;
  c.q_hot_inc = prm.omega2 * common;
  c.q_hot_coh = p * prm.omega2 * common;
  return c;
}

}  // namespace maser
