#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "abq/norms.hpp"
#include "abq/operators.hpp"
#include "abq/timestepper.hpp"
#include "abq/transform.hpp"
#include "test_support.hpp"

using namespace abq;
using abq::test::max_coeff;
using abq::test::max_coeff_diff;

namespace {

SolverConfig config_for(const Grid& g, double nu, double kappa) {
  SolverConfig c;
  c.grid = g;
  c.nu = nu;
  c.kappa = kappa;
  c.output_every = 1.0;
  return c;
}

State dealiased_random_state(const Grid& g, int kmax, std::uint64_t seed) {
  State s = abq::test::random_state(g, kmax, seed);
  dealias_in_place(s.omega);
  dealias_in_place(s.theta);
  return s;
}

State advance(State s, const SolverConfig& c, double dt, int steps) {
  for (int n = 0; n < steps; ++n) s = step(s, c, dt);
  return s;
}

double state_distance(const State& a, const State& b) {
  return std::sqrt(l2_norm_squared(a.omega - b.omega) + l2_norm_squared(a.theta - b.theta));
}

}  // namespace

TEST(NonlinearRhs, BuoyancyWithoutFlow) {
  const Grid g(16, 16);
  const State s{SpectralField(g), forward(RealField::sample(g, [](double x, double) { return std::cos(x); })), 0.0};
  const Tendency t = nonlinear_rhs(s);
  const RealField dw = inverse(t.domega);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) EXPECT_NEAR(dw(i, j), -std::sin(g.x(i)), 1e-14);
  EXPECT_LT(max_coeff(t.dtheta), 1e-16);
}

TEST(NonlinearRhs, ParallelShearIsSteady) {
  const Grid g(16, 16);
  const State s{forward(RealField::sample(g, [](double, double y) { return -std::sin(y); })), SpectralField(g), 0.0};
  const Tendency t = nonlinear_rhs(s);
  EXPECT_LT(max_coeff(t.domega), 1e-16);
  EXPECT_LT(max_coeff(t.dtheta), 1e-16);
}

TEST(NonlinearRhs, GalerkinEnergyIdentity) {
  const Grid g(48, 48);
  for (int seed = 0; seed < 10; ++seed) {
    const State s = dealiased_random_state(g, 15, 500 + seed);
    const Tendency t = nonlinear_rhs(s);
    const SpectralField adv_omega = t.domega - derivative(s.theta, Axis::x);
    const double scale_w = l2_norm(adv_omega) * l2_norm(s.omega);
    const double scale_t = l2_norm(t.dtheta) * l2_norm(s.theta);
    EXPECT_LE(std::abs(integral_product(adv_omega, s.omega)), 1e-11 * scale_w);
    EXPECT_LE(std::abs(integral_product(t.dtheta, s.theta)), 1e-11 * scale_t);
    EXPECT_EQ(t.dtheta.mean(), Complex{});
    EXPECT_EQ(t.domega.mean(), Complex{});
  }
}

TEST(NonlinearRhs, NonFiniteInputSignalsBlowUp) {
  const Grid g(16, 16);
  State s = dealiased_random_state(g, 4, 3);
  s.theta.set_mode(1, 1, {std::nan(""), 0.0});
  EXPECT_THROW(nonlinear_rhs(s), BlowUpError);
}

TEST(Step, PureVerticalDiffusionIsExact) {
  const Grid g(16, 16);
  const State s{SpectralField(g), forward(RealField::sample(g, [](double, double y) { return std::cos(y); })), 0.0};
  const double dt = 0.037;
  const State next = step(s, config_for(g, 1.0, 1.0), dt);
  EXPECT_NEAR(next.theta.mode(0, 1).real(), 0.5 * std::exp(-dt), 1e-14);
  EXPECT_NEAR(next.t, dt, 1e-16);
}

TEST(Step, InviscidShortTimeConvergesSpectrally) {
  // Same data on 32^2, 64^2 and a 128^2 reference; errors drop by orders of magnitude.
  const Grid base(32, 32);
  State s0 = dealiased_random_state(base, 4, 17);
  s0.omega *= 0.1;
  s0.theta *= 0.1;
  const double dt = 1e-3;
  std::vector<State> runs;
  for (int n : {32, 64, 128}) {
    const Grid g(n, n);
    runs.push_back(advance(State{resample(s0.omega, g), resample(s0.theta, g), 0.0},
                           config_for(g, 0.0, 0.0), dt, 50));
  }
  std::vector<double> err;
  for (int k = 0; k < 2; ++k) {
    const Grid& g = runs[k].omega.grid();
    err.push_back(std::sqrt(l2_norm_squared(runs[k].omega - resample(runs[2].omega, g)) +
                            l2_norm_squared(runs[k].theta - resample(runs[2].theta, g))));
  }
  const double scale = l2_norm(runs[2].omega);
  EXPECT_LE(err[1], 1e-12 * scale);
  EXPECT_GE(err[0] / err[1], 1e4);
}

TEST(Step, TemporalSelfConvergenceIsThirdOrder) {
  const Grid g(32, 32);
  const State s0 = dealiased_random_state(g, 4, 23);
  const SolverConfig c = config_for(g, 1.0, 1.0);
  const double t_end = 0.4;
  std::vector<State> runs;
  for (int level = 0; level < 3; ++level) {
    const int steps = 10 << level;
    runs.push_back(advance(s0, c, t_end / steps, steps));
  }
  const double e1 = state_distance(runs[0], runs[1]);
  const double e2 = state_distance(runs[1], runs[2]);
  EXPECT_NEAR(std::log2(e1 / e2), 3.0, 0.2);
}

TEST(Step, InviscidInvariantsDriftAtHighOrder) {
  // With nu = kappa = 0 the transport keeps ||theta||_2 fixed; without
  // buoyancy (theta = 0) ||omega||_2 is fixed too. Only the time
  // discretization moves them, at O(dt^3) per step or better.
  const Grid g(32, 32);
  State s0 = dealiased_random_state(g, 6, 31);
  const State shear{s0.omega, SpectralField(g), 0.0};
  const SolverConfig c = config_for(g, 0.0, 0.0);
  double prev_theta = 0.0, prev_omega = 0.0;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    const State a = step(s0, c, dt);
    const State b = step(shear, c, dt);
    const double drift_theta = std::abs(l2_norm_squared(a.theta) - l2_norm_squared(s0.theta));
    const double drift_omega = std::abs(l2_norm_squared(b.omega) - l2_norm_squared(shear.omega));
    if (prev_theta > 0.0) {
      EXPECT_GE(prev_theta / drift_theta, 7.0);
      EXPECT_GE(prev_omega / drift_omega, 7.0);
    }
    prev_theta = drift_theta;
    prev_omega = drift_omega;
  }
}

TEST(Step, ThetaMeanIsConserved) {
  const Grid g(32, 32);
  State s = dealiased_random_state(g, 6, 41);
  const Complex mean0 = s.theta.mean();
  s = advance(s, config_for(g, 1.0, 1.0), 2e-3, 50);
  EXPECT_NEAR(std::abs(s.theta.mean() - mean0), 0.0, 1e-14 * std::abs(mean0));
  EXPECT_EQ(s.omega.mean(), Complex{});
}

TEST(Step, ThetaL2IsNonincreasingWithDiffusion) {
  const Grid g(32, 32);
  State s = dealiased_random_state(g, 6, 43);
  const SolverConfig c = config_for(g, 1.0, 1.0);
  double prev = l2_norm(s.theta);
  for (int n = 0; n < 100; ++n) {
    s = step(s, c, 2e-3);
    const double now = l2_norm(s.theta);
    EXPECT_LE(now, prev * (1.0 + 1e-12));
    prev = now;
  }
}

TEST(Step, Deterministic) {
  const Grid g(32, 32);
  const State s0 = dealiased_random_state(g, 6, 47);
  const SolverConfig c = config_for(g, 1.0, 1.0);
  const State a = advance(s0, c, 2e-3, 20);
  const State b = advance(s0, c, 2e-3, 20);
  EXPECT_EQ(max_coeff_diff(a.omega, b.omega), 0.0);
  EXPECT_EQ(max_coeff_diff(a.theta, b.theta), 0.0);
}

TEST(Step, NonFiniteStateCarriesLastValid) {
  const Grid g(16, 16);
  State s = dealiased_random_state(g, 4, 53);
  s.omega.set_mode(1, 1, {1e300, 0.0});
  s.omega.set_mode(2, 1, {1e300, 0.0});
  try {
    for (int n = 0; n < 50; ++n) s = step(s, config_for(g, 0.0, 0.0), 1.0);
    FAIL() << "expected blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_TRUE(e.last_valid().omega.is_finite());
  }
}

TEST(Cfl, RestingFlowReturnsCap) {
  const Grid g(16, 16);
  SolverConfig c = config_for(g, 1.0, 1.0);
  c.output_every = 0.25;
  const State s{SpectralField(g), SpectralField(g), 0.0};
  EXPECT_EQ(cfl_dt(s, c), 0.25);
}

TEST(Cfl, FormulaInstance) {
  // psi = sin x + sin y gives u = (-cos y, cos x): max|u1| = max|u2| = 1
  const Grid g(64, 64);
  const State s{forward(RealField::sample(g, [](double x, double y) { return -std::sin(x) - std::sin(y); })),
                SpectralField(g), 0.0};
  SolverConfig c = config_for(g, 1.0, 1.0);
  c.cfl_safety = 0.5;
  EXPECT_NEAR(cfl_dt(s, c), 0.0078125, 1e-15);
}

TEST(Cfl, AutoStepIsStableOnRandomStates) {
  const Grid g(32, 32);
  for (int seed = 0; seed < 3; ++seed) {
    State s = dealiased_random_state(g, 6, 60 + seed);
    const SolverConfig c = config_for(g, 1.0, 1.0);
    for (int n = 0; n < 100; ++n) s = step(s, c, cfl_dt(s, c));
    EXPECT_TRUE(s.omega.is_finite());
    EXPECT_TRUE(s.theta.is_finite());
  }
}

TEST(Tail, IndicatorSeesOuterModes) {
  const Grid g(48, 48);
  State s{SpectralField(g), SpectralField(g), 0.0};
  s.theta.set_mode(2, 1, 1.0);
  EXPECT_EQ(spectral_tail_indicator(s), 0.0);
  s.theta.set_mode(15, 1, 1.0);  // cutoff 16, outer third starts above 10.67
  EXPECT_NEAR(spectral_tail_indicator(s), 0.5, 1e-15);
}
