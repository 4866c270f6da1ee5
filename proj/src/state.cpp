#include "abq/state.hpp"

#include <cmath>

#include "abq/errors.hpp"
#include "abq/operators.hpp"

namespace abq {

void State::validate() const {
  if (!(omega.grid() == theta.grid())) throw InputError("omega and theta live on different grids");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("state time must be finite and >= 0");
  if (!has_zero_mean(omega)) throw InputError("vorticity mean mode must be zero");
  if (!omega.is_finite() || !theta.is_finite()) throw InputError("state has non-finite coefficients");
  const double tol = 1e-12;
  if (omega.hermitian_defect() > tol || theta.hermitian_defect() > tol) {
    throw InputError("state is not Hermitian-symmetric");
  }
}

void SolverConfig::validate() const {
  if (grid.nx < 8 || grid.ny < 8) throw InputError("solver grid is not set");
  if (!(nu >= 0.0) || !(kappa >= 0.0)) throw InputError("nu and kappa must be >= 0");
  if (dt && !(*dt > 0.0)) throw InputError("dt must be positive");
  if (!(t_end > 0.0)) throw InputError("t_end must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw InputError("cfl_safety must be in (0, 1]");
  if (!(output_every > 0.0)) throw InputError("output_every must be positive");
}

}  // namespace abq
