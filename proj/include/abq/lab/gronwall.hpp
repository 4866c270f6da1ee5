#pragma once

#include <string>
#include <vector>

#include "abq/lab/huge_real.hpp"

namespace abq::lab {

enum class BFamily {
  proportional,  // B = max(A^alpha, e)
  saturating,    // A' = 0 and B the largest root of B = K A log B loglog B (e if none exceeds e)
};

struct GronwallCase {
  double K = 1.0;
  double A0 = 2.718281828459045;
  BFamily family = BFamily::proportional;
  double alpha = 1.0;
  double T = 2.0;
};

/// loglog Q(t) = (loglog A0 + 260 K^2 t) e^{K t}. Requires K >= 1, A0 >= e, t >= 0.
double q_envelope(double K, double A0, double t);

/// 512 K^2 Q(t)^2 + 2 A0
HugeReal gronwall_rhs(double K, double A0, double t);

struct GronwallLevel {
  double dt = 0.0;
  bool finite = true;
  double log_a_end = 0.0;     // log A(T)
  double loglog_a_end = 0.0;  // log log A(T)
  double max_log_ratio = 0.0;  // max over grid times of log(lhs / rhs)
};

struct GronwallReport {
  GronwallCase c;
  std::vector<GronwallLevel> levels;
  bool converged = false;
  double dt = 0.0;             // accepted step
  double max_ratio = 0.0;      // lhs / rhs at the accepted step (0 when rhs overwhelms lhs)
  double max_log_ratio = 0.0;
  double t_at_max = 0.0;
  bool pass = false;
};

/// Integrates A' = K A log B loglog B - B (A clamped at e) with RK4 in the
/// variable loglog A, halving dt from dt0 until A(T) changes by less than
/// 1e-6 relative, and compares 2A(t) + int_0^t B with 512 K^2 Q(t)^2 + 2A(0)
/// at every grid time.
GronwallReport gronwall_verify(const GronwallCase& c, double dt0 = 1e-3, int max_halvings = 12);

/// alpha in {1, 1.5, 2}, K in {1, 2, 5}, A0 in {e, e^e, e^10}, T = 2.
std::vector<GronwallCase> standard_gronwall_cases();

}  // namespace abq::lab
