#include "abq/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "abq/kernels.hpp"
#include "abq/operators.hpp"
#include "abq/transform.hpp"

namespace abq {
namespace {

// exp(-coef * ky^2 * h) for every stored mode.
std::vector<double> vertical_factor(const Grid& g, double coef, double h) {
  std::vector<double> f(g.spectral_size());
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      f[static_cast<std::size_t>(i) * g.nky() + j] =
          std::exp(-coef * static_cast<double>(j) * j * h);
    }
  }
  return f;
}

SpectralField scaled(SpectralField f, const std::vector<double>& factor) {
  kernels::omp::scale_modes(f.coeffs(), factor);
  return f;
}

// out = a*x + b*y
SpectralField combined(double a, const SpectralField& x, double b, const SpectralField& y) {
  SpectralField out(x.grid());
  kernels::omp::combine(a, x.coeffs(), b, y.coeffs(), out.coeffs());
  return out;
}

struct Factors {
  std::vector<double> full;     // E(dt)
  std::vector<double> half;     // E(dt/2)
  std::vector<double> back;     // E(-dt/2)
};

Factors make_factors(const Grid& g, double coef, double dt) {
  return {vertical_factor(g, coef, dt), vertical_factor(g, coef, 0.5 * dt),
          vertical_factor(g, coef, -0.5 * dt)};
}

}  // namespace

Tendency nonlinear_rhs(const State& state, bool dealias_output) {
  const Grid& g = state.omega.grid();
  const Velocity u = velocity_from_vorticity(state.omega);
  const RealField u1 = inverse(u.u1);
  const RealField u2 = inverse(u.u2);

  auto advective = [&](const SpectralField& f) {
    const RealField fx = inverse(derivative(f, Axis::x));
    const RealField fy = inverse(derivative(f, Axis::y));
    RealField out(g);
    kernels::omp::advect(u1.data(), u2.data(), fx.data(), fy.data(), out.data());
    SpectralField s = forward(out);
    if (dealias_output) dealias_in_place(s);
    s.at(0, 0) = Complex{};
    return s;
  };

  Tendency t{advective(state.omega), advective(state.theta)};
  t.domega += derivative(state.theta, Axis::x);
  t.domega.at(0, 0) = Complex{};
  if (!t.domega.is_finite() || !t.dtheta.is_finite()) {
    throw BlowUpError("non-finite nonlinear tendency at t = " + std::to_string(state.t), state);
  }
  return t;
}

Tendency full_rhs(const State& state, const SolverConfig& config) {
  return add_dissipation(nonlinear_rhs(state, config.dealias), state, config);
}

Tendency add_dissipation(Tendency t, const State& state, const SolverConfig& config) {
  SpectralField dw = second_derivative(state.omega, Axis::y);
  dw *= config.nu;
  SpectralField dth = second_derivative(state.theta, Axis::y);
  dth *= config.kappa;
  t.domega += dw;
  t.dtheta += dth;
  return t;
}

StepResult step_with_tendency(const State& s0, const SolverConfig& config, double dt,
                              const Tendency* start) {
  const Grid& g = s0.omega.grid();
  const Factors fw = make_factors(g, config.nu, dt);
  const Factors ft = make_factors(g, config.kappa, dt);
  const bool da = config.dealias;

  // Shu-Osher SSP-RK3 applied to v = exp(-L t) w, written back in w.
  const Tendency n0 = start ? *start : nonlinear_rhs(s0, da);
  State s1{scaled(combined(1.0, s0.omega, dt, n0.domega), fw.full),
           scaled(combined(1.0, s0.theta, dt, n0.dtheta), ft.full), s0.t + dt};

  const Tendency n1 = nonlinear_rhs(s1, da);
  State s2{combined(0.75, scaled(s0.omega, fw.half), 0.25,
                    scaled(combined(1.0, s1.omega, dt, n1.domega), fw.back)),
           combined(0.75, scaled(s0.theta, ft.half), 0.25,
                    scaled(combined(1.0, s1.theta, dt, n1.dtheta), ft.back)),
           s0.t + 0.5 * dt};

  const Tendency n2 = nonlinear_rhs(s2, da);
  State s3{combined(1.0 / 3.0, scaled(s0.omega, fw.full), 2.0 / 3.0,
                    scaled(combined(1.0, s2.omega, dt, n2.domega), fw.half)),
           combined(1.0 / 3.0, scaled(s0.theta, ft.full), 2.0 / 3.0,
                    scaled(combined(1.0, s2.theta, dt, n2.dtheta), ft.half)),
           s0.t + dt};
  s3.omega.at(0, 0) = Complex{};

  if (!s3.omega.is_finite() || !s3.theta.is_finite()) {
    throw BlowUpError("non-finite state after step to t = " + std::to_string(s3.t), s0);
  }
  return {std::move(s3), n0};
}

State step(const State& state, const SolverConfig& config, double dt) {
  return step_with_tendency(state, config, dt).state;
}

double cfl_number(const State& state, double dt) {
  const Grid& g = state.omega.grid();
  const Velocity u = velocity_from_vorticity(state.omega);
  const double m1 = kernels::omp::max_abs(inverse(u.u1).data());
  const double m2 = kernels::omp::max_abs(inverse(u.u2).data());
  return dt * (m1 * (g.nx / 2) + m2 * (g.ny / 2));
}

double cfl_dt(const State& state, const SolverConfig& config) {
  const double rate = cfl_number(state, 1.0);
  if (!(rate > 0.0)) return config.output_every;
  return std::min(config.cfl_safety / rate, config.output_every);
}

double spectral_tail_indicator(const State& state, bool dealias_on) {
  const Grid& g = state.omega.grid();
  const int kept = dealias_on ? dealias_cutoff(g.nx) : g.nx / 2;
  const double outer = 2.0 * kept / 3.0;
  auto fraction = [&](const SpectralField& f) {
    double total = 0.0;
    double tail = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      const bool in_tail = std::abs(g.kx(i)) > outer;
      for (int j = 0; j < g.nky(); ++j) {
        const double w = (j == 0 || j == g.ny / 2) ? 1.0 : 2.0;
        const double e = w * std::norm(f.at(i, j));
        total += e;
        if (in_tail) tail += e;
      }
    }
    return total > 0.0 ? tail / total : 0.0;
  };
  return std::max(fraction(state.omega), fraction(state.theta));
}

}  // namespace abq
