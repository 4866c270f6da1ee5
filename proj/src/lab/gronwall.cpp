#include "abq/lab/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "abq/errors.hpp"

namespace abq::lab {
namespace {

constexpr double kE = std::numbers::e;

void validate(double K, double A0) {
  if (!(K >= 1.0) || !std::isfinite(K)) throw InputError("K must be finite and >= 1");
  if (!(A0 >= kE * (1.0 - 1e-15)) || !std::isfinite(A0)) throw InputError("A(0) must be finite and >= e");
}

// log B as a function of L = log A for the proportional family
double log_b(double alpha, double L) { return std::max(alpha * L, 1.0); }

// d/dt loglog A with z = loglog A; when log B = alpha L the ratios are taken
// in closed form so that L may overflow
double rate(const GronwallCase& c, double z) {
  const double L = std::max(std::exp(z), 1.0);
  if (c.alpha * L >= 1.0 && c.alpha > 0.0) {
    const double tail = c.alpha == 1.0 ? 1.0 / L : std::exp((c.alpha - 1.0) * L - std::log(L));
    return c.K * c.alpha * (std::log(c.alpha) + z) - tail;
  }
  return -std::exp(1.0 - L) / L;
}

HugeReal b_of(const GronwallCase& c, double z) {
  const double L = std::max(std::exp(z), 1.0);
  if (std::isfinite(L)) return HugeReal::from_log(log_b(c.alpha, L));
  return HugeReal::from_loglog(std::log(c.alpha) + z);
}

HugeReal a_of(double z) { return HugeReal::from_loglog(std::max(z, 0.0)); }

struct Trajectory {
  bool finite = true;
  double z_end = 0.0;
  double max_log_ratio = -std::numeric_limits<double>::infinity();
  double t_at_max = 0.0;
};

Trajectory integrate(const GronwallCase& c, double dt) {
  Trajectory tr;
  const long steps = std::lround(c.T / dt);
  const double h = c.T / static_cast<double>(steps);
  double z = std::log(std::log(c.A0));
  HugeReal integral;
  HugeReal b_prev = b_of(c, z);
  auto check = [&](double t) {
    const HugeReal lhs = a_of(z).scaled(2.0) + integral;
    const double lr = log_ratio(lhs, gronwall_rhs(c.K, c.A0, t));
    if (lr > tr.max_log_ratio) {
      tr.max_log_ratio = lr;
      tr.t_at_max = t;
    }
  };
  check(0.0);
  for (long n = 0; n < steps; ++n) {
    const double k1 = rate(c, z);
    const double k2 = rate(c, z + 0.5 * h * k1);
    const double k3 = rate(c, z + 0.5 * h * k2);
    const double k4 = rate(c, z + h * k3);
    z = std::max(z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), 0.0);
    if (!std::isfinite(z)) {
      tr.finite = false;
      return tr;
    }
    const HugeReal b = b_of(c, z);
    integral = integral + (b_prev + b).scaled(0.5 * h);
    b_prev = b;
    check(static_cast<double>(n + 1) * h);
  }
  tr.z_end = z;
  return tr;
}

// largest root beta = log B of beta = log K + log A + log beta + log log beta
double saturating_log_b(double K, double A0) {
  const double c = std::log(K) + std::log(A0);
  double beta = c + 10.0;
  for (int it = 0; it < 200; ++it) {
    const double next = c + std::log(beta) + std::log(std::log(beta));
    if (!(next > 1.0)) return 1.0;
    if (std::abs(next - beta) < 1e-15 * beta) return next;
    beta = next;
  }
  return std::max(beta, 1.0);
}

}  // namespace

double q_envelope(double K, double A0, double t) {
  validate(K, A0);
  if (!(t >= 0.0)) throw InputError("t must be >= 0");
  return (std::log(std::log(A0)) + 260.0 * K * K * t) * std::exp(K * t);
}

HugeReal gronwall_rhs(double K, double A0, double t) {
  const HugeReal q = HugeReal::from_loglog(q_envelope(K, A0, t));
  return q.pow(2.0).scaled(512.0 * K * K) + HugeReal::from_value(2.0 * A0);
}

GronwallReport gronwall_verify(const GronwallCase& c, double dt0, int max_halvings) {
  validate(c.K, c.A0);
  if (!(c.T > 0.0)) throw InputError("horizon T must be positive");
  if (!(dt0 > 0.0)) throw InputError("dt must be positive");
  GronwallReport rep;
  rep.c = c;

  if (c.family == BFamily::saturating) {
    // A stays at A0; lhs = 2 A0 + t B is increasing and linear in t
    const HugeReal b = HugeReal::from_log(saturating_log_b(c.K, c.A0));
    const long steps = std::max(1L, std::lround(c.T / dt0));
    rep.max_log_ratio = -std::numeric_limits<double>::infinity();
    for (long n = 0; n <= steps; ++n) {
      const double t = c.T * static_cast<double>(n) / static_cast<double>(steps);
      const HugeReal lhs = HugeReal::from_value(2.0 * c.A0) + b.scaled(std::max(t, 1e-300));
      const double lr = log_ratio(t > 0.0 ? lhs : HugeReal::from_value(2.0 * c.A0), gronwall_rhs(c.K, c.A0, t));
      if (lr > rep.max_log_ratio) {
        rep.max_log_ratio = lr;
        rep.t_at_max = t;
      }
    }
    rep.converged = true;
    rep.dt = c.T / static_cast<double>(steps);
    rep.max_ratio = std::exp(rep.max_log_ratio);
    rep.pass = rep.max_log_ratio <= 0.0;
    return rep;
  }

  if (!(c.alpha >= 0.0)) throw InputError("alpha must be >= 0");
  double dt = dt0;
  Trajectory prev;
  bool have_prev = false;
  for (int level = 0; level <= max_halvings; ++level, dt *= 0.5) {
    const Trajectory tr = integrate(c, dt);
    GronwallLevel lv;
    lv.dt = dt;
    lv.finite = tr.finite;
    lv.loglog_a_end = tr.z_end;
    lv.log_a_end = std::exp(tr.z_end);
    lv.max_log_ratio = tr.max_log_ratio;
    rep.levels.push_back(lv);
    if (tr.finite && have_prev) {
      // relative change of A(T): |d log A| when log A is moderate, else relative
      // change of log A, else of loglog A
      const double la = std::exp(tr.z_end);
      const double lp = std::exp(prev.z_end);
      double change;
      if (la < 700.0) change = std::abs(la - lp);
      else if (std::isfinite(la)) change = std::abs(la - lp) / la;
      else change = std::abs(tr.z_end - prev.z_end) / tr.z_end;
      if (change < 1e-6) {
        rep.converged = true;
        rep.dt = dt;
        rep.max_log_ratio = tr.max_log_ratio;
        rep.t_at_max = tr.t_at_max;
        break;
      }
    }
    prev = tr;
    have_prev = tr.finite;
  }
  if (!rep.converged) {
    rep.dt = rep.levels.back().dt;
    rep.max_log_ratio = rep.levels.back().max_log_ratio;
  }
  rep.max_ratio = std::exp(rep.max_log_ratio);
  rep.pass = rep.converged && rep.max_log_ratio <= 0.0;
  return rep;
}

std::vector<GronwallCase> standard_gronwall_cases() {
  std::vector<GronwallCase> cases;
  for (double alpha : {1.0, 1.5, 2.0}) {
    for (double K : {1.0, 2.0, 5.0}) {
      for (double A0 : {kE, std::exp(kE), std::exp(10.0)}) {
        cases.push_back({K, A0, BFamily::proportional, alpha, 2.0});
      }
    }
  }
  return cases;
}

}  // namespace abq::lab
