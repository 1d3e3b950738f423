#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maser/density_matrix.hpp"
#include "maser/model.hpp"
#include "maser/params.hpp"

namespace maser {

enum class SolveMethod { analytic, nullspace, evolve };
std::string to_string(SolveMethod m);

/// One entry of the closed-form cross-check: the value obtained from the
/// reduced linear system against a reference closed-form expression.
struct ClosedFormEntry {
  std::string name;
  double solved;
  double reference;
  /// |solved - reference| / max(|solved|, |reference|, 1e-300)
  double relative_mismatch;
  bool consistent;  // relative_mismatch <= 1e-9
};

/// Cross-check attached by the analytic solver. The rho22 reference
/// expression is known to disagree with the generator's fixed point (it is
/// not dimensionally consistent); it is evaluated and reported for
/// diagnostics, never enforced. Inconsistent entries are logged to stderr
/// with both values.
struct ClosedFormCheck {
  bool all_consistent;
  std::vector<ClosedFormEntry> entries;
};

struct SteadyStateSolution {
  Matrix4 rho;
  /// max-entry residual of the vectorized generator applied to rho.
  double residual;
  SolveMethod method;
  /// Measured kernel dimension for the nullspace method; 1 for analytic
  /// (whose preconditions exclude degeneracy); 0 for evolve (not computed).
  int nullspace_dim;
  /// Present on the analytic path only.
  std::optional<ClosedFormCheck> closed_form{};
};

/// Closed-form steady state, valid at delta == 0 with the drive on resonance
/// and |p| < 1: solves the reduced 4-variable real linear system in
/// (rho11, rho22, Im rho12, rho23); the remaining structure is
/// rho13 = rho12, rho33 = rho22, rho00 = 1 - rho11 - 2 rho22, with the 0-row
/// coherences zero. Throws PreconditionViolated outside its domain and
/// DarkState if the reduced system is singular.
SteadyStateSolution analytic_steady_state(const MaserParams& prm);

/// Steady state from the SVD kernel of the vectorized generator. Kernel
/// vectors are those with singular value <= 1e-10 * sigma_max. A kernel of
/// dimension > 1 throws DarkState carrying the full basis; no representative
/// is picked from a degenerate kernel.
SteadyStateSolution numeric_steady_state(const MaserParams& prm);

struct EvolveOptions {
  /// Integrator error budget per unit time.
  double tol = 1e-10;
  /// Evolution horizon; empty selects 50 / (slowest relaxation rate of the
  /// generator spectrum), capped at 1e6 / omega1.
  std::optional<double> t_final{};
  /// Initial state; empty selects the maximally mixed state.
  std::optional<Matrix4> rho0{};
};

/// Integrates the rotating-frame master equation until t_final. In automatic
/// mode (no explicit t_final) the residual is brought under the acceptance
/// threshold by tightening the tolerance if needed; with an explicit t_final
/// the reached state is returned as-is with its measured residual.
SteadyStateSolution evolve_to_steady_state(const MaserParams& prm,
                                           const EvolveOptions& opts = {});

enum class SolverChoice { automatic, analytic, nullspace, evolve };
std::string to_string(SolverChoice c);

/// automatic picks analytic when its preconditions hold (delta == 0,
/// resonant drive, |p| < 1) and the SVD kernel method otherwise.
SteadyStateSolution solve_steady_state(const MaserParams& prm,
                                       SolverChoice choice = SolverChoice::automatic);

/// max-entry norm of L * vec(rho) — stationarity residual of a trial state.
double generator_residual(const MaserParams& prm, const Matrix4& rho);

}  // namespace maser
