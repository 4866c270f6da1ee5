#include "abq/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "abq/norms.hpp"

namespace abq {

double divergence_ratio(const SpectralField& omega) {
  const Velocity u = velocity_from_vorticity(omega);
  double grad = 0.0;
  for (const SpectralField* c : {&u.u1, &u.u2}) {
    grad += l2_norm_squared(derivative(*c, Axis::x)) + l2_norm_squared(derivative(*c, Axis::y));
  }
  if (!(grad > 0.0)) return 0.0;
  return l2_norm(divergence(u)) / std::sqrt(grad);
}

MonitorConfig monitor_for(const SolverConfig& config, MonitorConfig base) {
  base.nu = config.nu;
  base.kappa = config.kappa;
  base.dealias = config.dealias;
  return base;
}

namespace {

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

}  // namespace

RunResult run_simulation(const State& initial, const SolverConfig& config, const MonitorConfig& monitor_in,
                         const OutputHook& hook) {
  config.validate();
  initial.validate();
  const MonitorConfig monitor = monitor_for(config, monitor_in);

  RunResult res;
  res.series.meta = {kSeriesVersion, config.grid.nx, config.grid.ny, config.nu, config.kappa,
                     monitor.qset, monitor.r_grid};
  res.final_state = initial;

  State state = initial;
  State last_output = initial;
  RunIntegrals integrals;
  double interval_div = divergence_ratio(state.omega);
  double interval_cfl = 0.0;
  res.max_div_ratio = interval_div;

  auto emit = [&](const State& s, const State* prev) {
    DiagnosticsRecord r = record(s, prev, monitor, integrals);
    r.div_ratio = interval_div;
    r.cfl = interval_cfl;
    r.tail = spectral_tail_indicator(s, config.dealias);
    res.series.records.push_back(r);
    if (hook) hook(s, r);
    interval_div = 0.0;
    interval_cfl = 0.0;
  };

  try {
    emit(state, nullptr);
    Tendency n = nonlinear_rhs(state, config.dealias);
    Integrands left = integrands(state, add_dissipation(n, state, config));
    long k = 1;
    const double t0 = initial.t;
    const double eps = 1e-12 * std::max(1.0, config.t_end);

    while (state.t < config.t_end - eps) {
      const double next_out = std::min(t0 + static_cast<double>(k) * config.output_every, config.t_end);
      double dt = config.dt ? *config.dt : cfl_dt(state, config);
      const bool hits_output = state.t + dt >= next_out - eps;
      if (hits_output) dt = next_out - state.t;

      const double cfl = cfl_number(state, dt);
      interval_cfl = std::max(interval_cfl, cfl);
      if (config.dt && cfl > kCflLimit) {
        res.status = RunStatus::unstable;
        res.message = "CFL number " + format_time(cfl) + " exceeds the stability limit at t = " +
                      format_time(state.t);
        break;
      }

      StepResult sr = step_with_tendency(state, config, dt, &n);
      if (hits_output) sr.state.t = next_out;
      ++res.steps;

      const double tail = spectral_tail_indicator(sr.state, config.dealias);
      if (tail > kTailWarning) ++res.tail_warnings;
      if (tail > kTailHalt) {
        res.status = RunStatus::underresolved;
        res.message = "spectral tail indicator " + format_time(tail) + " exceeds halt threshold at t = " +
                      format_time(sr.state.t);
        break;
      }

      n = nonlinear_rhs(sr.state, config.dealias);
      const Integrands right = integrands(sr.state, add_dissipation(n, sr.state, config));
      accumulate(integrals, left, right, dt);
      left = right;
      const double div = divergence_ratio(sr.state.omega);
      interval_div = std::max(interval_div, div);
      res.max_div_ratio = std::max(res.max_div_ratio, div);

      state = std::move(sr.state);
      res.final_state = state;
      if (hits_output) {
        emit(state, &last_output);
        last_output = state;
        ++k;
      }
    }
  } catch (const BlowUpError& e) {
    res.status = RunStatus::blowup;
    res.message = e.what();
    res.final_state = e.last_valid();
  }
  return res;
}

}  // namespace abq
