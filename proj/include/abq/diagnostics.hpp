#pragma once

#include <map>
#include <vector>

#include "abq/operators.hpp"
#include "abq/state.hpp"
#include "abq/timestepper.hpp"

namespace abq {

/// What the monitor measures and with which coefficients.
struct MonitorConfig {
  std::vector<double> qset{4.0, 8.0};                   // theta L^q exponents (2 and inf always)
  std::vector<double> r_grid{2.0, 4.0, 8.0, 16.0, 32.0};  // growth-functional exponents
  double nu = 1.0;
  double kappa = 1.0;
  bool dealias = true;
};

/// Time integrals accumulated step by step. The trapezoidal rule is
/// corrected with the endpoint derivatives, h^2/12 (f'(a) - f'(b)), which
/// makes it fourth order; int_dt_sq uses the plain trapezoidal rule.
struct RunIntegrals {
  double dyu_sq = 0.0;      // int ||d_y u||_2^2
  double dytheta_sq = 0.0;  // int ||d_y theta||_2^2
  double fdiss = 0.0;       // int ||(d_y u, d_y theta, d_xy u, d_xy theta)||_2^2
  double dx_sq = 0.0;       // int ||(d_x u, d_x theta)||_2^2
  double dt_sq = 0.0;       // int ||d_t u||_2^2 + ||d_t theta||_2^2
};

/// Integrands of RunIntegrals at one instant. `full` is the complete
/// right-hand side at `state` (nonlinear plus dissipation).
struct Integrands {
  double dyu_sq = 0.0;
  double dytheta_sq = 0.0;
  double fdiss = 0.0;
  double dx_sq = 0.0;
  double dt_sq = 0.0;
  // time derivatives of the first four
  double dyu_sq_rate = 0.0;
  double dytheta_sq_rate = 0.0;
  double fdiss_rate = 0.0;
  double dx_sq_rate = 0.0;
};
Integrands integrands(const State& state, const Tendency& full);
void accumulate(RunIntegrals& acc, const Integrands& left, const Integrands& right, double dt);

/// One time-stamped row of monitored quantities.
struct DiagnosticsRecord {
  double t = 0.0;
  double u_l2 = 0.0;
  double theta_l2 = 0.0;
  double theta_linf = 0.0;
  std::map<double, double> theta_lq;
  double u_h1 = 0.0;
  double theta_h1 = 0.0;
  double dyu_h1 = 0.0;
  double dytheta_h1 = 0.0;
  double dxu_l2 = 0.0;
  double dxtheta_l2 = 0.0;
  double dyu_l2 = 0.0;
  double dytheta_l2 = 0.0;
  double dxyu_l2 = 0.0;
  double dxytheta_l2 = 0.0;
  double growth_ratio = 0.0;
  double u2_linf = 0.0;
  double dt_u_l2 = 0.0;
  double dt_theta_l2 = 0.0;
  double h1_residual = 0.0;  // rhs - lhs of the H1 differential inequality
  double f_local = 0.0;
  RunIntegrals integrals;
  // per-interval solver statistics, filled by the run driver
  double div_ratio = 0.0;  // max ||div u|| / ||grad u|| over the steps
  double tail = 0.0;       // spectral tail indicator
  double cfl = 0.0;        // max CFL number over the steps
  double theta_mean = 0.0;
};

/// Growth functional max_{r in r_grid} ||u2||_{2r}^2 / (r log r).
double growth_ratio(const SpectralField& u2, const std::vector<double>& r_grid);

/// d/dt of ||f||_{H1}^2 given df/dt, evaluated exactly in spectral space.
double h1_squared_rate(const SpectralField& f, const SpectralField& dfdt);
/// d/dt of ||d_x^a d_y^b f||_2^2 given df/dt.
double derivative_squared_rate(const SpectralField& f, const SpectralField& dfdt, int a, int b);

/// All monitored quantities of `state`. With `prev` (one output interval
/// earlier) the time-derivative norms are backward differences, otherwise
/// they come from the instantaneous right-hand side.
DiagnosticsRecord record(const State& state, const State* prev, const MonitorConfig& config,
                         const RunIntegrals& integrals = {});

}  // namespace abq
