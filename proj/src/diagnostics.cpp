#include "abq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "abq/errors.hpp"
#include "abq/norms.hpp"
#include "abq/transform.hpp"

namespace abq {
namespace {

constexpr double kE3 = 20.085536923187668;  // e^3

double sq(double v) { return v * v; }

double dx_sq(const SpectralField& f) { return l2_norm_squared(derivative(f, Axis::x)); }
double dy_sq(const SpectralField& f) { return l2_norm_squared(derivative(f, Axis::y)); }

// ||f||_{H1}^2 = ||f||^2 + ||d_x f||^2 + ||d_y f||^2
double h1_sq(const SpectralField& f) { return l2_norm_squared(f) + dx_sq(f) + dy_sq(f); }

double vec_l2_sq(const Velocity& u) { return l2_norm_squared(u.u1) + l2_norm_squared(u.u2); }

Velocity map(const Velocity& u, auto&& op) { return {op(u.u1), op(u.u2)}; }

Tendency full_tendency(const State& s, const MonitorConfig& c) {
  Tendency t = nonlinear_rhs(s, c.dealias);
  SpectralField dw = second_derivative(s.omega, Axis::y);
  dw *= c.nu;
  SpectralField dth = second_derivative(s.theta, Axis::y);
  dth *= c.kappa;
  t.domega += dw;
  t.dtheta += dth;
  return t;
}

}  // namespace

Integrands integrands(const State& state, const Tendency& full) {
  const Velocity u = velocity_from_vorticity(state.omega);
  const Velocity dyu = map(u, [](const SpectralField& f) { return derivative(f, Axis::y); });
  const SpectralField dyth = derivative(state.theta, Axis::y);
  const Velocity dtu = velocity_from_vorticity(full.domega);

  Integrands out;
  out.dyu_sq = vec_l2_sq(dyu);
  out.dytheta_sq = l2_norm_squared(dyth);
  out.fdiss = out.dyu_sq + out.dytheta_sq + dx_sq(dyu.u1) + dx_sq(dyu.u2) + dx_sq(dyth);
  out.dx_sq = dx_sq(u.u1) + dx_sq(u.u2) + dx_sq(state.theta);
  out.dt_sq = vec_l2_sq(dtu) + l2_norm_squared(full.dtheta);

  auto rate = [](const SpectralField& f, const SpectralField& df, int a, int b) {
    return derivative_squared_rate(f, df, a, b);
  };
  const SpectralField& th = state.theta;
  const SpectralField& dth = full.dtheta;
  out.dyu_sq_rate = rate(u.u1, dtu.u1, 0, 1) + rate(u.u2, dtu.u2, 0, 1);
  out.dytheta_sq_rate = rate(th, dth, 0, 1);
  out.fdiss_rate = out.dyu_sq_rate + out.dytheta_sq_rate + rate(u.u1, dtu.u1, 1, 1) +
                   rate(u.u2, dtu.u2, 1, 1) + rate(th, dth, 1, 1);
  out.dx_sq_rate = rate(u.u1, dtu.u1, 1, 0) + rate(u.u2, dtu.u2, 1, 0) + rate(th, dth, 1, 0);
  return out;
}

void accumulate(RunIntegrals& acc, const Integrands& a, const Integrands& b, double dt) {
  const double h = 0.5 * dt;
  const double c = dt * dt / 12.0;
  acc.dyu_sq += h * (a.dyu_sq + b.dyu_sq) + c * (a.dyu_sq_rate - b.dyu_sq_rate);
  acc.dytheta_sq += h * (a.dytheta_sq + b.dytheta_sq) + c * (a.dytheta_sq_rate - b.dytheta_sq_rate);
  acc.fdiss += h * (a.fdiss + b.fdiss) + c * (a.fdiss_rate - b.fdiss_rate);
  acc.dx_sq += h * (a.dx_sq + b.dx_sq) + c * (a.dx_sq_rate - b.dx_sq_rate);
  acc.dt_sq += h * (a.dt_sq + b.dt_sq);
}

double growth_ratio(const SpectralField& u2, const std::vector<double>& r_grid) {
  const RealField samples = inverse(u2);
  double best = 0.0;
  for (double r : r_grid) {
    if (!(r >= 2.0)) throw InputError("growth ratio exponents must be >= 2");
    const double n = lq_norm(samples, 2.0 * r);
    best = std::max(best, n * n / (r * std::log(r)));
  }
  return best;
}

double derivative_squared_rate(const SpectralField& f, const SpectralField& dfdt, int a, int b) {
  const Grid& g = f.grid();
  double total = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const double kx = i == g.nx / 2 ? 0.0 : g.kx(i);
    const double wx = a == 0 ? 1.0 : std::pow(kx * kx, a);
    for (int j = 0; j < g.nky(); ++j) {
      const bool nyq_y = j == g.ny / 2;
      const double ky = nyq_y ? 0.0 : g.ky(j);
      const double wy = b == 0 ? 1.0 : std::pow(ky * ky, b);
      const double w = (j == 0 || nyq_y) ? 1.0 : 2.0;
      total += w * wx * wy * std::real(std::conj(f.at(i, j)) * dfdt.at(i, j));
    }
  }
  return 2.0 * Grid::area() * total;
}

double h1_squared_rate(const SpectralField& f, const SpectralField& dfdt) {
  const Grid& g = f.grid();
  double total = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const bool nyq_x = i == g.nx / 2;
    const double kx = nyq_x ? 0.0 : g.kx(i);
    for (int j = 0; j < g.nky(); ++j) {
      const bool nyq_y = j == g.ny / 2;
      const double ky = nyq_y ? 0.0 : g.ky(j);
      const double w = (j == 0 || nyq_y) ? 1.0 : 2.0;
      const double re = std::real(std::conj(f.at(i, j)) * dfdt.at(i, j));
      total += w * (1.0 + kx * kx + ky * ky) * re;
    }
  }
  return 2.0 * Grid::area() * total;
}

DiagnosticsRecord record(const State& state, const State* prev, const MonitorConfig& config,
                         const RunIntegrals& integrals) {
  DiagnosticsRecord r;
  r.t = state.t;
  const Velocity u = velocity_from_vorticity(state.omega);
  const SpectralField& th = state.theta;

  r.u_l2 = std::sqrt(vec_l2_sq(u));
  const NormSet tn = norms(th, config.qset);
  r.theta_l2 = tn.l2;
  r.theta_linf = tn.linf;
  r.theta_lq = tn.lq;
  r.theta_mean = std::real(th.mean());

  const double u_h1_sq = h1_sq(u.u1) + h1_sq(u.u2);
  const double th_h1_sq = h1_sq(th);
  r.u_h1 = std::sqrt(u_h1_sq);
  r.theta_h1 = std::sqrt(th_h1_sq);

  const Velocity dyu = map(u, [](const SpectralField& f) { return derivative(f, Axis::y); });
  const SpectralField dyth = derivative(th, Axis::y);
  const double dyu_h1_sq = h1_sq(dyu.u1) + h1_sq(dyu.u2);
  const double dyth_h1_sq = h1_sq(dyth);
  r.dyu_h1 = std::sqrt(dyu_h1_sq);
  r.dytheta_h1 = std::sqrt(dyth_h1_sq);
  r.dyu_l2 = std::sqrt(vec_l2_sq(dyu));
  r.dytheta_l2 = l2_norm(dyth);
  r.dxu_l2 = std::sqrt(dx_sq(u.u1) + dx_sq(u.u2));
  r.dxtheta_l2 = std::sqrt(dx_sq(th));
  r.dxyu_l2 = std::sqrt(dx_sq(dyu.u1) + dx_sq(dyu.u2));
  r.dxytheta_l2 = std::sqrt(dx_sq(dyth));

  r.growth_ratio = growth_ratio(u.u2, config.r_grid);
  r.u2_linf = linf_norm(u.u2);

  const Tendency full = full_tendency(state, config);
  const Velocity dtu = velocity_from_vorticity(full.domega);
  if (prev != nullptr && state.t > prev->t) {
    const double h = state.t - prev->t;
    const Velocity up = velocity_from_vorticity(prev->omega);
    r.dt_u_l2 = std::sqrt(vec_l2_sq({u.u1 - up.u1, u.u2 - up.u2})) / h;
    r.dt_theta_l2 = l2_norm(th - prev->theta) / h;
  } else {
    r.dt_u_l2 = std::sqrt(vec_l2_sq(dtu));
    r.dt_theta_l2 = l2_norm(full.dtheta);
  }

  const double a = u_h1_sq + th_h1_sq + kE3;
  const double b = dyu_h1_sq + dyth_h1_sq + kE3;
  const double da = h1_squared_rate(u.u1, dtu.u1) + h1_squared_rate(u.u2, dtu.u2) +
                    h1_squared_rate(th, full.dtheta);
  const double rhs = 8.0 * (1.0 + sq(r.theta_linf) + sq(r.u2_linf)) * a + kE3;
  r.h1_residual = rhs - (da + b);

  r.integrals = integrals;
  r.f_local = 1.0 + sq(r.u_l2) + sq(r.theta_l2) + sq(r.dxu_l2) + sq(r.dxtheta_l2) + integrals.fdiss;
  return r;
}

}  // namespace abq
