#pragma once

#include <optional>

#include "abq/field.hpp"

namespace abq {

/// Boussinesq state in vorticity form: omega = d_x u2 - d_y u1 and theta.
struct State {
  SpectralField omega;
  SpectralField theta;
  double t = 0.0;

  /// Checks the state invariants: shared grid, zero-mean vorticity, finite
  /// Hermitian coefficients, t >= 0. Throws InputError on violation.
  void validate() const;
};

/// Numerical parameters of one simulation.
struct SolverConfig {
  Grid grid;
  double nu = 1.0;     // vertical viscosity
  double kappa = 1.0;  // vertical diffusivity
  std::optional<double> dt;  // fixed step; empty means CFL-limited ("auto")
  double t_end = 1.0;
  double cfl_safety = 0.5;
  bool dealias = true;
  double output_every = 0.1;

  void validate() const;
};

}  // namespace abq
