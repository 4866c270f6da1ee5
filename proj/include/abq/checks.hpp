#pragma once

#include <map>
#include <string>
#include <vector>

#include "abq/series.hpp"

namespace abq {

/// One comparison lhs <= rhs at one sample time.
struct BoundCheck {
  std::string name;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double margin = 0.0;  // rhs - lhs
};

BoundCheck make_check(std::string name, double t, double lhs, double rhs);

/// Result of one check family over a series.
struct CheckReport {
  std::string name;
  std::vector<BoundCheck> checks;
  bool pass = true;
  bool skipped = false;
  std::string notice;
  std::map<std::string, double> stats;

  [[nodiscard]] std::size_t failures() const;
};

/// ||theta(t)||_q <= ||theta_0||_q (1 + tol) for q in {2, qset..., inf}.
CheckReport check_theta_maximum_principle(const Series& s, double tol = 1e-6);
/// |‖theta‖^2 - ‖theta_0‖^2 + 2 kappa int ‖d_y theta‖^2| <= tol ‖theta_0‖^2.
CheckReport check_theta_balance(const Series& s, double tol = 1e-5);
/// max_{s<=t} (‖u(s)‖^2 + 2 nu int_0^s ‖d_y u‖^2) <= (‖u_0‖ + t‖theta_0‖)^2 (1 + tol).
CheckReport check_velocity_l2(const Series& s, double tol = 1e-4);
/// Per-interval max of ‖div u‖ / ‖grad u‖ is at most tol.
CheckReport check_incompressibility(const Series& s, double tol = 1e-12);
/// Growth ratio finite at every sample; stats carry its initial value and maximal increment.
CheckReport check_growth_ratio(const Series& s);
/// A' + B <= 8 (1 + ‖theta‖_inf^2 + ‖u2‖_inf^2) A + e^3 + slack * h^2 * A at interior
/// samples, with A' a centered difference over spacing h. Passes when at
/// least `min_fraction` of samples pass. Skipped when spacing exceeds max_spacing.
CheckReport h1_inequality_residual(const Series& s, double slack = 10.0, double min_fraction = 0.99,
                                   double max_spacing = 0.01);
/// f(t) <= f_0 / sqrt(1 - 2 C f_0^2 t) (1 + tol) on [0, window / (C f_0^2)], with C the
/// positive part of the largest forward-difference estimate of f'/f^3.
CheckReport local_bound(const Series& s, double tol = 0.01, double window = 0.125);

/// Twin-run data at one sample: d = ‖(u1-u2, theta1-theta2)‖^2, m2 = sup ‖(u2, theta2)‖^2
/// so far, d2 = int ‖(d_x u2, d_x theta2)‖^2.
struct TwinSample {
  double t = 0.0;
  double d = 0.0;
  double m2 = 0.0;
  double d2 = 0.0;
};
/// Estimates C = sup log(d/d0) / (t + m2 d2) and checks d <= exp(C (t + m2 d2)) d0.
/// Skipped when d0 = 0. stats["C_hat"] holds the estimate.
CheckReport twin_run_check(const std::vector<TwinSample>& samples, double epsilon);
/// Relative spread (max - min) / max |C| across perturbation sizes is at most tol.
CheckReport twin_stability(const std::map<double, double>& c_hat_by_eps, double tol = 0.05);

/// Names accepted by run_check.
const std::vector<std::string>& check_names();
CheckReport run_check(const std::string& name, const Series& s);

}  // namespace abq
