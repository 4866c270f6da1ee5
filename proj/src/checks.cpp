#include "abq/checks.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>

#include "abq/errors.hpp"

namespace abq {
namespace {

constexpr double kE3 = 20.085536923187668;

void finish(CheckReport& r) {
  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const BoundCheck& c) { return c.pass; });
}

const DiagnosticsRecord& initial(const Series& s, const std::string& name) {
  if (s.records.empty()) throw InputError(name + ": empty series");
  return s.records.front();
}

}  // namespace

BoundCheck make_check(std::string name, double t, double lhs, double rhs) {
  BoundCheck c;
  c.name = std::move(name);
  c.t = t;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.pass = std::isfinite(lhs) && lhs <= rhs;
  return c;
}

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.pass; }));
}

CheckReport check_theta_maximum_principle(const Series& s, double tol) {
  CheckReport rep;
  rep.name = "theta_max_principle";
  const auto& r0 = initial(s, rep.name);
  for (const auto& r : s.records) {
    rep.checks.push_back(make_check("theta_l2", r.t, r.theta_l2, r0.theta_l2 * (1.0 + tol)));
    for (const auto& [q, v] : r.theta_lq) {
      char name[32];
      std::snprintf(name, sizeof name, "theta_l%g", q);
      rep.checks.push_back(make_check(name, r.t, v, r0.theta_lq.at(q) * (1.0 + tol)));
    }
    rep.checks.push_back(make_check("theta_linf", r.t, r.theta_linf, r0.theta_linf * (1.0 + tol)));
  }
  finish(rep);
  return rep;
}

CheckReport check_theta_balance(const Series& s, double tol) {
  CheckReport rep;
  rep.name = "theta_balance";
  const auto& r0 = initial(s, rep.name);
  const double e0 = r0.theta_l2 * r0.theta_l2;
  double worst = 0.0;
  for (const auto& r : s.records) {
    const double defect =
        std::abs(r.theta_l2 * r.theta_l2 - e0 + 2.0 * s.meta.kappa * r.integrals.dytheta_sq);
    worst = std::max(worst, e0 > 0.0 ? defect / e0 : defect);
    rep.checks.push_back(make_check("theta_l2_balance", r.t, defect, tol * e0));
  }
  rep.stats["max_relative_defect"] = worst;
  finish(rep);
  return rep;
}

CheckReport check_velocity_l2(const Series& s, double tol) {
  CheckReport rep;
  rep.name = "velocity_l2";
  const auto& r0 = initial(s, rep.name);
  double running = 0.0;
  double sup_u = 0.0;
  double literal_worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : s.records) {
    const double diss = 2.0 * s.meta.nu * r.integrals.dyu_sq;
    running = std::max(running, r.u_l2 * r.u_l2 + diss);
    sup_u = std::max(sup_u, r.u_l2 * r.u_l2);
    const double bound = std::pow(r0.u_l2 + r.t * r0.theta_l2, 2);
    rep.checks.push_back(make_check("u_l2_energy", r.t, running, bound * (1.0 + tol)));
    if (bound > 0.0) literal_worst = std::max(literal_worst, (sup_u + diss) / bound);
  }
  rep.stats["max_literal_ratio"] = literal_worst;
  finish(rep);
  return rep;
}

CheckReport check_incompressibility(const Series& s, double tol) {
  CheckReport rep;
  rep.name = "incompressibility";
  for (const auto& r : s.records) rep.checks.push_back(make_check("div_ratio", r.t, r.div_ratio, tol));
  finish(rep);
  return rep;
}

CheckReport check_growth_ratio(const Series& s) {
  CheckReport rep;
  rep.name = "growth_ratio";
  const auto& r0 = initial(s, rep.name);
  double worst = 0.0;
  for (const auto& r : s.records) {
    rep.checks.push_back(
        make_check("growth_ratio_finite", r.t, r.growth_ratio, std::numeric_limits<double>::max()));
    worst = std::max(worst, r.growth_ratio - r0.growth_ratio);
  }
  rep.stats["initial"] = r0.growth_ratio;
  rep.stats["max_increment"] = worst;
  finish(rep);
  return rep;
}

CheckReport h1_inequality_residual(const Series& s, double slack, double min_fraction,
                                   double max_spacing) {
  CheckReport rep;
  rep.name = "h1_inequality";
  const auto& rec = s.records;
  auto a_of = [](const DiagnosticsRecord& r) {
    return r.u_h1 * r.u_h1 + r.theta_h1 * r.theta_h1 + kE3;
  };
  if (rec.size() < 3) {
    rep.skipped = true;
    rep.notice = "fewer than 3 samples";
    return rep;
  }
  for (std::size_t i = 1; i < rec.size(); ++i) {
    if (rec[i].t - rec[i - 1].t > max_spacing) {
      rep.skipped = true;
      rep.notice = "sample spacing exceeds " + std::to_string(max_spacing) + "; check skipped";
      return rep;
    }
  }
  std::size_t passed = 0;
  for (std::size_t i = 1; i + 1 < rec.size(); ++i) {
    const auto& r = rec[i];
    const double h = 0.5 * (rec[i + 1].t - rec[i - 1].t);
    const double a = a_of(r);
    const double da = (a_of(rec[i + 1]) - a_of(rec[i - 1])) / (2.0 * h);
    const double b = r.dyu_h1 * r.dyu_h1 + r.dytheta_h1 * r.dytheta_h1 + kE3;
    const double rhs = 8.0 * (1.0 + r.theta_linf * r.theta_linf + r.u2_linf * r.u2_linf) * a + kE3 +
                       slack * h * h * a;
    rep.checks.push_back(make_check("h1_differential", r.t, da + b, rhs));
    if (rep.checks.back().pass) ++passed;
  }
  const double fraction = static_cast<double>(passed) / static_cast<double>(rep.checks.size());
  rep.stats["pass_fraction"] = fraction;
  rep.pass = fraction >= min_fraction;
  return rep;
}

CheckReport local_bound(const Series& s, double tol, double window) {
  CheckReport rep;
  rep.name = "local_bound";
  const auto& rec = s.records;
  const double f0 = initial(s, rep.name).f_local;
  double c_hat = 0.0;
  for (std::size_t i = 0; i + 1 < rec.size(); ++i) {
    const double h = rec[i + 1].t - rec[i].t;
    if (!(h > 0.0)) continue;
    const double f = rec[i].f_local;
    c_hat = std::max(c_hat, (rec[i + 1].f_local - f) / h / (f * f * f));
  }
  const double t_max = c_hat > 0.0 ? window / (c_hat * f0 * f0) : std::numeric_limits<double>::infinity();
  for (const auto& r : rec) {
    if (r.t - rec.front().t > t_max) break;
    const double tau = r.t - rec.front().t;
    const double bound = f0 / std::sqrt(1.0 - 2.0 * c_hat * f0 * f0 * tau);
    rep.checks.push_back(make_check("cube_bound", r.t, r.f_local, bound * (1.0 + tol)));
  }
  rep.stats["C_hat"] = c_hat;
  rep.stats["f0"] = f0;
  rep.stats["window_end"] = t_max;
  finish(rep);
  return rep;
}

CheckReport twin_run_check(const std::vector<TwinSample>& samples, double epsilon) {
  CheckReport rep;
  rep.name = "twin";
  rep.stats["epsilon"] = epsilon;
  if (samples.empty() || !(samples.front().d > 0.0)) {
    rep.skipped = true;
    rep.notice = "identical initial data (d(0) = 0); check skipped";
    return rep;
  }
  const double d0 = samples.front().d;
  double c_hat = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    const double span = s.t + s.m2 * s.d2;
    if (!(span > 0.0)) continue;
    c_hat = std::max(c_hat, std::log(s.d / d0) / span);
  }
  if (!std::isfinite(c_hat)) c_hat = 0.0;
  for (const auto& s : samples) {
    const double span = s.t + s.m2 * s.d2;
    const double bound = std::exp(c_hat * span) * d0;
    rep.checks.push_back(make_check("twin_difference", s.t, s.d, bound * (1.0 + 1e-12)));
  }
  rep.stats["C_hat"] = c_hat;
  finish(rep);
  return rep;
}

CheckReport twin_stability(const std::map<double, double>& c_hat_by_eps, double tol) {
  CheckReport rep;
  rep.name = "twin_stability";
  if (c_hat_by_eps.size() < 2) {
    rep.skipped = true;
    rep.notice = "fewer than two perturbation sizes";
    return rep;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double scale = 0.0;
  for (const auto& [eps, c] : c_hat_by_eps) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
    scale = std::max(scale, std::abs(c));
  }
  const double spread = scale > 0.0 ? (hi - lo) / scale : 0.0;
  rep.checks.push_back(make_check("C_hat_spread", 0.0, spread, tol));
  rep.stats["spread"] = spread;
  finish(rep);
  return rep;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"theta_max_principle", "theta_balance", "velocity_l2",
                                                 "incompressibility",   "growth_ratio",  "h1_inequality",
                                                 "local_bound"};
  return names;
}

CheckReport run_check(const std::string& name, const Series& s) {
  if (name == "theta_max_principle") return check_theta_maximum_principle(s);
  if (name == "theta_balance") return check_theta_balance(s);
  if (name == "velocity_l2") return check_velocity_l2(s);
  if (name == "incompressibility") return check_incompressibility(s);
  if (name == "growth_ratio") return check_growth_ratio(s);
  if (name == "h1_inequality") return h1_inequality_residual(s);
  if (name == "local_bound") return local_bound(s);
  throw InputError("unknown check '" + name + "'");
}

}  // namespace abq
