#pragma once

#include <stdexcept>
#include <string>

#include "abq/state.hpp"

namespace abq {

/// Tendencies of (omega, theta).
struct Tendency {
  SpectralField domega;
  SpectralField dtheta;
};

/// Raised when the solution stops being representable (NaN or a resolved
/// spectrum filling up). Carries the last state known to be valid.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, State last_valid)
      : std::runtime_error(what), last_valid_(std::move(last_valid)) {}
  [[nodiscard]] const State& last_valid() const { return last_valid_; }

 private:
  State last_valid_;
};

/// Advection and buoyancy: (-u.grad(omega) + d_x theta, -u.grad(theta)).
/// Dissipation is excluded. The k = 0 tendencies are exactly zero.
/// Throws BlowUpError (holding `state`) if a product is not finite.
Tendency nonlinear_rhs(const State& state, bool dealias = true);

/// Full right-hand side including the vertical dissipation terms.
Tendency full_rhs(const State& state, const SolverConfig& config);
/// Adds nu d_yy omega and kappa d_yy theta to a nonlinear tendency of `state`.
Tendency add_dissipation(Tendency nonlinear, const State& state, const SolverConfig& config);

struct StepResult {
  State state;
  Tendency start_tendency;  // nonlinear_rhs of the input state
};

/// One SSP-RK3 step for the nonlinear terms with the vertical dissipation
/// integrated exactly by the factors exp(-nu*ky^2*h), exp(-kappa*ky^2*h).
/// `start`, when given, must be nonlinear_rhs(state) and is reused.
StepResult step_with_tendency(const State& state, const SolverConfig& config, double dt,
                              const Tendency* start = nullptr);
State step(const State& state, const SolverConfig& config, double dt);

/// CFL-limited step: cfl_safety / (max|u1| * nx/2 + max|u2| * ny/2),
/// capped by output_every (the cap alone when the flow is at rest).
double cfl_dt(const State& state, const SolverConfig& config);

/// dt * (max|u1| * nx/2 + max|u2| * ny/2).
double cfl_number(const State& state, double dt);

/// Fraction of spectral energy in the outer third of the retained k_x modes,
/// maximized over omega and theta.
double spectral_tail_indicator(const State& state, bool dealias = true);

/// Under-resolution flag and halt thresholds for the tail indicator.
inline constexpr double kTailWarning = 1e-6;
inline constexpr double kTailHalt = 1e-2;

}  // namespace abq
