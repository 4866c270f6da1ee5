#include "abq/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <ostream>

#include "abq/errors.hpp"
#include "abq/lab/gronwall.hpp"
#include "abq/lab/inequalities.hpp"
#include "abq/norms.hpp"
#include "abq/run.hpp"
#include "abq/snapshot.hpp"
#include "abq/transform.hpp"

namespace abq::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup: return "blowup";
    case RunStatus::underresolved: return "underresolved";
    case RunStatus::unstable: return "unstable";
  }
  return "unknown";
}

fs::path snapshot_path(const fs::path& dir, double t) { return dir / ("t" + fmt("%011.5f", t) + ".snap"); }

}  // namespace

int simulate(const fs::path& config_path, const std::optional<fs::path>& out_override, std::ostream& log) {
  RunConfig rc;
  State initial;
  try {
    rc = load_run_config(config_path);
    initial = make_initial_state(rc.solver.grid, rc.ic, rc.solver.dealias);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  const fs::path out = out_override ? *out_override : (rc.out_dir.empty() ? fs::path("out") : rc.out_dir);
  const fs::path snaps = out / "snapshots";
  fs::create_directories(snaps);

  const double every = rc.snapshot_every.value_or(0.0);
  long next_snap = 0;
  const double eps = 1e-9 * std::max(1.0, rc.solver.t_end);
  OutputHook hook = [&](const State& s, const DiagnosticsRecord&) {
    if (every > 0.0 && s.t >= static_cast<double>(next_snap) * every - eps) {
      write_snapshot(snapshot_path(snaps, s.t), snapshot_of(s));
      while (static_cast<double>(next_snap) * every <= s.t + eps) ++next_snap;
    } else if (s.t == initial.t && every <= 0.0) {
      write_snapshot(snapshot_path(snaps, s.t), snapshot_of(s));
    }
  };

  const RunResult res = run_simulation(initial, rc.solver, rc.monitor, hook);
  save_series(out / "series.csv", res.series);
  const bool ok = res.status == RunStatus::completed;
  write_snapshot(ok ? snapshot_path(snaps, res.final_state.t) : out / "last_valid.snap",
                 snapshot_of(res.final_state));

  json summary;
  summary["status"] = status_name(res.status);
  summary["message"] = res.message;
  summary["steps"] = res.steps;
  summary["final_time"] = res.final_state.t;
  summary["samples"] = res.series.records.size();
  summary["max_div_ratio"] = res.max_div_ratio;
  summary["tail_warning_steps"] = res.tail_warnings;
  write_file_atomic(out / "summary.json", summary.dump(2) + "\n");

  log << "status " << status_name(res.status) << ", " << res.steps << " steps, t = " << res.final_state.t
      << ", " << res.series.records.size() << " samples -> " << (out / "series.csv").string() << '\n';
  if (res.tail_warnings > 0) {
    log << "warning: spectral tail above " << kTailWarning << " on " << res.tail_warnings << " steps\n";
  }
  if (!ok) {
    log << "halted: " << res.message << '\n';
    return kHalt;
  }
  return kOk;
}

int monitor(const fs::path& series_path, const std::string& check, std::ostream& out) {
  Series s;
  try {
    s = load_series(series_path);
  } catch (const SchemaError& e) {
    out << "schema error: " << e.what() << '\n';
    return kConfigError;
  }
  std::vector<std::string> names;
  if (check == "all") {
    names = check_names();
  } else if (std::find(check_names().begin(), check_names().end(), check) != check_names().end()) {
    names = {check};
  } else {
    out << "unknown check '" << check << "'; expected all";
    for (const auto& n : check_names()) out << ", " << n;
    out << '\n';
    return kConfigError;
  }

  bool all_pass = true;
  out << std::left << std::setw(22) << "check" << std::setw(8) << "status" << std::setw(10) << "samples"
      << std::setw(10) << "failures" << "min margin\n";
  for (const auto& name : names) {
    const CheckReport rep = run_check(name, s);
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& c : rep.checks) min_margin = std::min(min_margin, c.margin);
    const char* status = rep.skipped ? "SKIP" : (rep.pass ? "PASS" : "FAIL");
    all_pass = all_pass && rep.pass;
    out << std::left << std::setw(22) << name << std::setw(8) << status << std::setw(10) << rep.checks.size()
        << std::setw(10) << rep.failures() << (rep.checks.empty() ? std::string("-") : fmt("%.6g", min_margin));
    for (const auto& [k, v] : rep.stats) out << "  " << k << '=' << fmt("%.6g", v);
    out << '\n';
    if (rep.skipped) out << "  notice: " << rep.notice << '\n';
    int shown = 0;
    for (const auto& c : rep.checks) {
      if (c.pass || shown >= 5) continue;
      out << "  violated " << c.name << " at t=" << fmt("%.6g", c.t) << ": lhs=" << fmt("%.10g", c.lhs)
          << " rhs=" << fmt("%.10g", c.rhs) << '\n';
      ++shown;
    }
  }
  return all_pass ? kOk : kCheckFailure;
}

namespace {

SolverConfig fixed_step_config(const Grid& g, double nu, double kappa, double dt, double t_end) {
  SolverConfig c;
  c.grid = g;
  c.nu = nu;
  c.kappa = kappa;
  c.dt = dt;
  c.t_end = t_end;
  c.output_every = t_end;
  return c;
}

State advance(State s, const SolverConfig& c) {
  const long steps = std::lround(c.t_end / *c.dt);
  for (long n = 0; n < steps; ++n) s = step(s, c, *c.dt);
  return s;
}

double distance(const State& a, const State& b) {
  const Grid& g = a.omega.grid().nx >= b.omega.grid().nx ? a.omega.grid() : b.omega.grid();
  const SpectralField dw = resample(a.omega, g) - resample(b.omega, g);
  const SpectralField dth = resample(a.theta, g) - resample(b.theta, g);
  return std::sqrt(l2_norm_squared(dw) + l2_norm_squared(dth));
}

ConvergenceResult diffusion_study(int levels) {
  ConvergenceResult r;
  const double t_end = 1.0;
  auto exact = [&](const Grid& g) {
    return make_initial_state(g, {"single-mode", {{"theta_amplitude", std::exp(-t_end)}}, {}});
  };
  double worst = 0.0;
  for (int i = 0; i < levels; ++i) {
    const Grid g(8 << i, 8 << i);
    const State s0 = make_initial_state(g, {"single-mode", {}, {}});
    const double e = distance(advance(s0, fixed_step_config(g, 1.0, 1.0, 0.1, t_end)), exact(g)) /
                     l2_norm(exact(g).theta);
    r.resolutions.push_back(g.nx);
    r.spatial_errors.push_back(e);
    worst = std::max(worst, e);
  }
  const Grid g(8, 8);
  const State s0 = make_initial_state(g, {"single-mode", {}, {}});
  for (int i = 0; i < levels; ++i) {
    const double dt = 0.25 / std::pow(2.0, i);
    const double e = distance(advance(s0, fixed_step_config(g, 1.0, 1.0, dt, t_end)), exact(g)) /
                     l2_norm(exact(g).theta);
    r.dts.push_back(dt);
    r.temporal_errors.push_back(e);
    worst = std::max(worst, e);
  }
  r.pass = worst <= 1e-13;
  r.note = "exact solution exp(-t) cos y; the integrating factor integrates vertical diffusion exactly, "
           "so spatial and temporal errors sit at round-off";
  return r;
}

ConvergenceResult taylor_vortex_study(int levels) {
  ConvergenceResult r;
  const double t_end = 0.5;
  const double dt = 0.0025;
  const IcSpec ic{"taylor-vortex", {}, {}};
  const int n_max = 32 << (levels - 1);
  const Grid ref_grid(std::max(512, 2 * n_max), std::max(512, 2 * n_max));
  const State ref = advance(make_initial_state(ref_grid, ic), fixed_step_config(ref_grid, 0.0, 0.0, dt, t_end));
  const double scale = std::sqrt(l2_norm_squared(ref.omega) + l2_norm_squared(ref.theta));
  for (int i = 0; i < levels; ++i) {
    const Grid g(32 << i, 32 << i);
    const State s = advance(make_initial_state(g, ic), fixed_step_config(g, 0.0, 0.0, dt, t_end));
    r.resolutions.push_back(g.nx);
    r.spatial_errors.push_back(distance(s, ref) / scale);
    if (i > 0) r.spatial_ratios.push_back(r.spatial_errors[i - 1] / r.spatial_errors[i]);
  }

  // temporal order of the full dissipative system by successive dt halvings
  const Grid g(64, 64);
  const State s0 = make_initial_state(g, ic);
  std::vector<State> runs;
  for (int i = 0; i <= levels; ++i) {
    const double h = 0.02 / std::pow(2.0, i);
    runs.push_back(advance(s0, fixed_step_config(g, 1.0, 1.0, h, t_end)));
    if (i > 0) {
      r.dts.push_back(h);
      r.temporal_errors.push_back(distance(runs[i - 1], runs[i]) / scale);
    }
    if (i > 1) r.temporal_orders.push_back(std::log2(r.temporal_errors[i - 2] / r.temporal_errors[i - 1]));
  }
  const bool spatial_ok =
      std::all_of(r.spatial_ratios.begin(), r.spatial_ratios.end(), [](double q) { return q >= 10.0; });
  const bool temporal_ok =
      std::all_of(r.temporal_orders.begin(), r.temporal_orders.end(), [](double p) { return std::abs(p - 3.0) <= 0.3; });
  r.pass = spatial_ok && temporal_ok;
  r.note = "spatial: inviscid run to t = 0.5 at dt = 0.0025 against N = " + std::to_string(ref_grid.nx) +
           "; temporal: nu = kappa = 1 at N = 64, successive dt halvings from 0.02";
  return r;
}

}  // namespace

ConvergenceResult convergence_study(const std::string& test, int levels) {
  if (levels < 3) throw ConfigError("convergence needs --levels >= 3");
  if (test == "diffusion") return diffusion_study(levels);
  if (test == "taylor-vortex") {
    if (levels > 5) throw ConfigError("taylor-vortex supports at most 5 levels");
    return taylor_vortex_study(levels);
  }
  throw ConfigError("unknown convergence test '" + test + "' (expected diffusion or taylor-vortex)");
}

int convergence(const std::string& test, int levels, std::ostream& out) {
  ConvergenceResult r;
  try {
    r = convergence_study(test, levels);
  } catch (const ConfigError& e) {
    out << "usage error: " << e.what() << '\n';
    return kConfigError;
  }
  out << test << ": " << r.note << '\n';
  for (std::size_t i = 0; i < r.resolutions.size(); ++i) {
    out << "  N=" << std::setw(4) << r.resolutions[i] << "  error " << fmt("%.3e", r.spatial_errors[i]);
    if (i > 0 && i - 1 < r.spatial_ratios.size()) out << "  reduction " << fmt("%.3g", r.spatial_ratios[i - 1]);
    out << '\n';
  }
  for (std::size_t i = 0; i < r.dts.size(); ++i) {
    out << "  dt=" << fmt("%-10.6g", r.dts[i]) << " error " << fmt("%.3e", r.temporal_errors[i]);
    if (i > 0 && i - 1 < r.temporal_orders.size()) out << "  order " << fmt("%.3f", r.temporal_orders[i - 1]);
    out << '\n';
  }
  out << (r.pass ? "PASS" : "FAIL") << '\n';
  return r.pass ? kOk : kCheckFailure;
}

TwinResult twin_study(const RunConfig& rc, const std::vector<double>& eps_list) {
  const SolverConfig& cfg = rc.solver;
  const Grid& g = cfg.grid;
  State base = make_initial_state(g, rc.ic, cfg.dealias);
  std::vector<State> perturbed;
  for (double eps : eps_list) {
    State p = base;
    // eps cos(y) / ‖cos y‖_2
    const double amp = eps / (std::numbers::pi * std::sqrt(2.0));
    p.theta.set_mode(0, 1, p.theta.mode(0, 1) + Complex{0.5 * amp, 0.0});
    perturbed.push_back(std::move(p));
  }

  TwinResult res;
  auto sample = [&](RunIntegrals& acc, double& m2) {
    const Velocity ub = velocity_from_vorticity(base.omega);
    m2 = std::max(m2, l2_norm_squared(ub.u1) + l2_norm_squared(ub.u2) + l2_norm_squared(base.theta));
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
      const Velocity up = velocity_from_vorticity(perturbed[k].omega);
      const double d = l2_norm_squared(up.u1 - ub.u1) + l2_norm_squared(up.u2 - ub.u2) +
                       l2_norm_squared(perturbed[k].theta - base.theta);
      res.samples[eps_list[k]].push_back({base.t, d, m2, acc.dx_sq});
    }
  };

  RunIntegrals acc;
  double m2 = 0.0;
  sample(acc, m2);
  Tendency n = nonlinear_rhs(base, cfg.dealias);
  Integrands left = integrands(base, add_dissipation(n, base, cfg));
  long k = 1;
  const double tol = 1e-12 * std::max(1.0, cfg.t_end);
  while (base.t < cfg.t_end - tol) {
    const double next_out = std::min(static_cast<double>(k) * cfg.output_every, cfg.t_end);
    double dt = cfg.dt ? *cfg.dt : cfl_dt(base, cfg);
    for (const auto& p : perturbed) {
      if (!cfg.dt) dt = std::min(dt, cfl_dt(p, cfg));
    }
    const bool hits = base.t + dt >= next_out - tol;
    if (hits) dt = next_out - base.t;
    StepResult sr = step_with_tendency(base, cfg, dt, &n);
    for (auto& p : perturbed) {
      p = step(p, cfg, dt);
      if (hits) p.t = next_out;
    }
    if (hits) sr.state.t = next_out;
    base = std::move(sr.state);
    n = nonlinear_rhs(base, cfg.dealias);
    const Integrands right = integrands(base, add_dissipation(n, base, cfg));
    accumulate(acc, left, right, dt);
    left = right;
    if (hits) {
      sample(acc, m2);
      ++k;
    }
  }

  for (double eps : eps_list) {
    CheckReport rep = twin_run_check(res.samples[eps], eps);
    if (!rep.skipped) res.c_hat[eps] = rep.stats.at("C_hat");
    res.reports[eps] = std::move(rep);
  }
  res.stability = twin_stability(res.c_hat);
  return res;
}

int twin(const fs::path& config_path, const std::vector<double>& eps_list,
         const std::optional<fs::path>& out_override, std::ostream& out) {
  RunConfig rc;
  try {
    rc = load_run_config(config_path);
    if (eps_list.empty()) throw ConfigError("--eps needs at least one value");
    for (double e : eps_list) {
      if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("perturbation sizes must be finite and >= 0");
    }
    make_initial_state(rc.solver.grid, rc.ic, rc.solver.dealias);
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  TwinResult res;
  try {
    res = twin_study(rc, eps_list);
  } catch (const BlowUpError& e) {
    out << "halted: " << e.what() << '\n';
    return kHalt;
  }

  json report;
  bool pass = true;
  for (const auto& [eps, rep] : res.reports) {
    const auto& s = res.samples.at(eps);
    json j;
    j["epsilon"] = eps;
    j["skipped"] = rep.skipped;
    if (rep.skipped) {
      out << "eps=" << fmt("%-8.3g", eps) << " skipped: " << rep.notice << '\n';
      j["notice"] = rep.notice;
    } else {
      const double decay = s.back().d / s.front().d;
      out << "eps=" << fmt("%-8.3g", eps) << " C_hat=" << fmt("%.8g", rep.stats.at("C_hat"))
          << "  d(T)/d(0)=" << fmt("%.10g", decay) << (rep.pass ? "" : "  FAIL") << '\n';
      j["C_hat"] = rep.stats.at("C_hat");
      j["final_ratio"] = decay;
      pass = pass && rep.pass;
    }
    json rows = json::array();
    for (const auto& x : s) rows.push_back({x.t, x.d, x.m2, x.d2});
    j["samples"] = rows;
    j["sample_columns"] = {"t", "d", "sup_norm2_sq", "int_dx_norm2_sq"};
    report["runs"].push_back(j);
  }
  if (!res.stability.skipped) {
    const double spread = res.stability.stats.at("spread");
    out << "C_hat relative spread " << fmt("%.3e", spread) << " (limit 0.05): "
        << (res.stability.pass ? "PASS" : "FAIL") << '\n';
    report["spread"] = spread;
    pass = pass && res.stability.pass;
  } else {
    out << "stability: " << res.stability.notice << '\n';
  }
  report["pass"] = pass;

  const fs::path dir = out_override ? *out_override : (rc.out_dir.empty() ? fs::path("out") : rc.out_dir);
  fs::create_directories(dir);
  write_file_atomic(dir / "twin.json", report.dump(2) + "\n");
  return pass ? kOk : kCheckFailure;
}

namespace {

json holder_report(const lab::HolderStudy& st, std::uint64_t seed, std::ostream& out) {
  json j;
  j["seed"] = seed;
  j["samples"] = st.samples;
  j["calibration_samples"] = st.samples / 2;
  for (double q : st.qs) {
    const double cal = st.calibration_max.at(q), held = st.heldout_max.at(q);
    out << "q=" << fmt("%-4g", q) << " C_hat=" << fmt("%.6f", cal) << "  held-out max " << fmt("%.6f", held)
        << "  excess " << fmt("%+.2f%%", 100.0 * (held / cal - 1.0)) << '\n';
    j["q"].push_back({{"q", q}, {"C_hat", cal}, {"heldout_max", held}, {"max", std::max(cal, held)}});
  }
  out << "q=2 formula agreement " << fmt("%.2e", st.q2_formula_max_diff) << ", resolution certificate "
      << fmt("%.2e", st.certificate_max_diff) << '\n';
  j["all_finite"] = st.all_finite;
  j["heldout_margin"] = st.heldout_margin;
  j["q2_formula_max_rel_diff"] = st.q2_formula_max_diff;
  j["certificate"] = {{"per_scale", lab::kDefaultPerScale},
                      {"fine_per_scale", 2.0 * lab::kDefaultPerScale},
                      {"max_rel_diff", st.certificate_max_diff}};
  j["pass"] = st.pass;
  return j;
}

json embedding_report(const lab::EmbeddingStudy& st, std::uint64_t seed, std::ostream& out) {
  json j;
  j["seed"] = seed;
  j["samples"] = st.samples;
  j["p"] = st.p;
  j["dilations"] = st.dilations;
  j["stress_dilations"] = st.stress_dilations;
  j["r_grid"] = lab::kEmbeddingRGrid;
  for (double lambda : st.lambdas) {
    const double c = st.c_hat.at(lambda), stress = st.stress_max.at(lambda);
    const int at_end = st.argmax_at_grid_end.count(lambda) ? st.argmax_at_grid_end.at(lambda) : 0;
    out << "lambda=" << fmt("%-4g", lambda) << " C_hat=" << fmt("%.6f", c) << " (a=" << st.c_hat_dilation.at(lambda)
        << ")  undilated max " << fmt("%.6f", st.undilated_max.at(lambda)) << "  stress max "
        << fmt("%.6f", stress) << "  r-sup at grid end: " << at_end << '\n';
    j["lambda"].push_back({{"lambda", lambda},
                           {"C_hat", c},
                           {"C_hat_dilation", st.c_hat_dilation.at(lambda)},
                           {"undilated_max", st.undilated_max.at(lambda)},
                           {"stress_max", stress},
                           {"r_sup_at_grid_end", at_end}});
  }
  out << "resolution certificate " << fmt("%.2e", st.certificate_max_diff) << '\n';
  j["all_finite"] = st.all_finite;
  j["stress_margin"] = st.stress_margin;
  j["certificate"] = {{"per_scale", lab::kDefaultPerScale},
                      {"fine_per_scale", 2.0 * lab::kDefaultPerScale},
                      {"max_rel_diff", st.certificate_max_diff}};
  j["pass"] = st.pass;
  return j;
}

json gronwall_report(const std::vector<lab::GronwallCase>& cases, bool& pass, std::ostream& out) {
  json j;
  pass = true;
  for (const auto& c : cases) {
    const lab::GronwallReport r = lab::gronwall_verify(c);
    json levels = json::array();
    for (const auto& lv : r.levels) {
      levels.push_back({{"dt", lv.dt},
                        {"finite", lv.finite},
                        {"loglog_A_T", lv.loglog_a_end},
                        {"max_log_ratio", lv.max_log_ratio}});
    }
    const bool saturating = c.family == lab::BFamily::saturating;
    out << (saturating ? "saturating      " : "alpha=" + fmt("%-4g", c.alpha) + "      ") << "K=" << fmt("%-3g", c.K)
        << " A0=" << fmt("%-10.6g", c.A0) << " max lhs/rhs " << fmt("%.3e", r.max_ratio) << " at t="
        << fmt("%.4g", r.t_at_max) << "  dt " << fmt("%.3g", r.dt) << (r.converged ? "" : " (not converged)")
        << (r.pass ? "" : "  FAIL") << '\n';
    j["cases"].push_back({{"K", c.K},
                          {"A0", c.A0},
                          {"family", saturating ? "saturating" : "proportional"},
                          {"alpha", c.alpha},
                          {"T", c.T},
                          {"converged", r.converged},
                          {"dt", r.dt},
                          {"levels", levels},
                          {"max_ratio", r.max_ratio},
                          {"max_log_ratio", r.max_log_ratio},
                          {"t_at_max", r.t_at_max},
                          {"pass", r.pass}});
    pass = pass && r.pass;
  }
  j["pass"] = pass;
  return j;
}

}  // namespace

int ineqlab(const std::string& name, const IneqlabOptions& o, std::ostream& out) {
  json report;
  bool pass = false;
  try {
    if (o.samples && *o.samples < 2) throw InputError("--samples must be at least 2");
    if (name == "holder") {
      const std::vector<double> qs = o.q.empty() ? std::vector<double>{2, 3, 4} : o.q;
      for (double q : qs) {
        if (!(q >= 2.0)) throw InputError("q must be >= 2");
      }
      const auto st = lab::holder_study(o.seed, o.samples.value_or(1000), qs);
      report = holder_report(st, o.seed, out);
      pass = st.pass;
    } else if (name == "embedding") {
      const std::vector<double> p = o.p.empty() ? std::vector<double>{4, 4} : o.p;
      const std::vector<double> lambdas = o.lambda.empty() ? std::vector<double>{0.5, 1.0} : o.lambda;
      const auto st = lab::embedding_study(o.seed, o.samples.value_or(200), p, lambdas);
      report = embedding_report(st, o.seed, out);
      pass = st.pass;
    } else if (name == "gronwall") {
      std::vector<lab::GronwallCase> cases;
      if (o.family != "proportional" && o.family != "saturating") {
        throw InputError("unknown family '" + o.family + "' (proportional, saturating)");
      }
      if (o.K || o.A0 || o.alpha || o.T || o.family == "saturating") {
        lab::GronwallCase c;
        c.K = o.K.value_or(1.0);
        c.A0 = o.A0.value_or(std::exp(std::numbers::e));
        c.alpha = o.alpha.value_or(1.0);
        c.T = o.T.value_or(2.0);
        c.family = o.family == "saturating" ? lab::BFamily::saturating : lab::BFamily::proportional;
        cases.push_back(c);
      } else {
        cases = lab::standard_gronwall_cases();
      }
      report = gronwall_report(cases, pass, out);
    } else {
      throw InputError("unknown study '" + name + "' (holder, embedding, gronwall)");
    }
  } catch (const InputError& e) {
    out << "usage error: " << e.what() << '\n';
    return kConfigError;
  }
  report["study"] = name;
  const fs::path dir = o.out_dir.value_or("out");
  fs::create_directories(dir);
  const fs::path file = dir / ("ineqlab_" + name + ".json");
  write_file_atomic(file, report.dump(2) + "\n");
  out << (pass ? "PASS" : "FAIL") << "  report " << file.string() << '\n';
  return pass ? kOk : kCheckFailure;
}

}  // namespace abq::cli
