#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "abq/errors.hpp"
#include "abq/norms.hpp"
#include "abq/operators.hpp"
#include "abq/pressure.hpp"
#include "abq/transform.hpp"
#include "test_support.hpp"

using namespace abq;
using abq::test::max_coeff;
using abq::test::max_coeff_diff;
using abq::test::random_field;
constexpr double pi = std::numbers::pi;

TEST(Grid, RejectsOddOrSmallSizes) {
  EXPECT_THROW(Grid(6, 8), InputError);
  EXPECT_THROW(Grid(8, 9), InputError);
  EXPECT_NO_THROW(Grid(8, 8));
}

TEST(Grid, WavenumberSet) {
  const Grid g(8, 8);
  std::vector<int> k;
  for (int i = 0; i < g.nx; ++i) k.push_back(g.kx(i));
  EXPECT_EQ(k, (std::vector<int>{0, 1, 2, 3, 4, -3, -2, -1}));
  EXPECT_EQ(g.nky(), 5);
}

TEST(Transform, CosineIsOnePairOfModes) {
  const Grid g(16, 16);
  const auto f = forward(RealField::sample(g, [](double x, double) { return std::cos(x); }));
  EXPECT_NEAR(f.mode(1, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(f.mode(-1, 0).real(), 0.5, 1e-15);
  SpectralField rest = f;
  rest.set_mode(1, 0, {});
  EXPECT_LT(max_coeff(rest), 1e-16);
}

TEST(Transform, ZeroSamplesGiveZeroCoefficients) {
  const Grid g(8, 12);
  EXPECT_EQ(max_coeff(forward(RealField(g))), 0.0);
}

TEST(Transform, DimensionMismatchIsRejected) {
  const Grid g(8, 8);
  EXPECT_THROW(RealField(g, std::vector<double>(63)), InputError);
}

TEST(Transform, RoundTripOnSeededRandomFields) {
  const Grid g(32, 24);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int seed = 0; seed < 100; ++seed) {
    const SpectralField f = random_field(g, 7, 1000 + seed);
    const RealField samples = inverse(f);
    const RealField back = inverse(forward(samples));
    double diff = 0.0, ref = 0.0;
    for (std::size_t n = 0; n < samples.data().size(); ++n) {
      diff += std::pow(samples.data()[n] - back.data()[n], 2);
      ref += std::pow(samples.data()[n], 2);
    }
    EXPECT_LE(std::sqrt(diff / ref), 1e-12) << "seed " << seed;
    EXPECT_EQ(forward(samples).hermitian_defect(), 0.0);
  }
}

TEST(Transform, ArbitrarySamplesRoundTrip) {
  // not band-limited: Nyquist content must survive the round trip too
  const Grid g(16, 16);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealField f(g);
  for (double& v : f.data()) v = u(rng);
  const RealField back = inverse(forward(f));
  for (std::size_t n = 0; n < f.data().size(); ++n) EXPECT_NEAR(back.data()[n], f.data()[n], 1e-14);
}

TEST(Transform, ResampleIsExactInterpolation) {
  const Grid coarse(16, 16);
  const Grid fine(40, 36);
  const auto fn = [](double x, double y) {
    return std::cos(3 * x - 2 * y) + 0.5 * std::sin(x + 5 * y) + std::cos(8 * x);  // 8 = Nyquist
  };
  const auto c = forward(RealField::sample(coarse, fn));
  const RealField up = inverse_on(c, fine);
  for (int i = 0; i < fine.nx; ++i) {
    for (int j = 0; j < fine.ny; ++j) {
      EXPECT_NEAR(up(i, j), fn(fine.x(i), fine.y(j)), 1e-13);
    }
  }
}

TEST(Derivative, AnalyticCosine) {
  const Grid g(16, 16);
  const auto f = forward(RealField::sample(g, [](double x, double) { return std::cos(3 * x); }));
  const RealField d = inverse(derivative(f, Axis::x));
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) EXPECT_NEAR(d(i, j), -3 * std::sin(3 * g.x(i)), 1e-13);
  }
  EXPECT_LT(max_coeff(derivative(f, Axis::y)), 1e-16);
}

TEST(Derivative, ConstantIsZero) {
  const Grid g(8, 8);
  const auto f = forward(RealField::sample(g, [](double, double) { return 4.2; }));
  EXPECT_EQ(max_coeff(derivative(f, Axis::x)), 0.0);
  EXPECT_EQ(max_coeff(derivative(f, Axis::y)), 0.0);
}

TEST(Derivative, NyquistModeIsZeroed) {
  const Grid g(8, 8);
  const auto f = forward(RealField::sample(g, [](double x, double y) { return std::cos(4 * x) + std::cos(4 * y); }));
  EXPECT_EQ(max_coeff(derivative(f, Axis::x)), 0.0);
  EXPECT_EQ(max_coeff(derivative(f, Axis::y)), 0.0);
}

TEST(Derivative, MatchesCenteredFiniteDifferences) {
  // f = sum a cos(kx x + ky y + phi); centered differences carry error h^2/6 |f'''|.
  struct Term {
    double a, kx, ky, phi;
  };
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2 * pi);
  std::uniform_int_distribution<int> wave(-5, 5);
  std::vector<Term> terms;
  for (int n = 0; n < 6; ++n) terms.push_back({amp(rng), double(wave(rng)), double(wave(rng)), phase(rng)});
  auto fn = [&](double x, double y) {
    double s = 0.0;
    for (const auto& t : terms) s += t.a * std::cos(t.kx * x + t.ky * y + t.phi);
    return s;
  };
  const Grid g(32, 32);
  const auto f = forward(RealField::sample(g, fn));
  for (Axis axis : {Axis::x, Axis::y}) {
    const RealField d = inverse(derivative(f, axis));
    double bound3 = 0.0;
    for (const auto& t : terms) bound3 += std::abs(t.a) * std::pow(std::abs(axis == Axis::x ? t.kx : t.ky), 3);
    double prev_err = 0.0;
    for (double h : {1e-2, 5e-3}) {
      double err = 0.0;
      for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
          const double x = g.x(i), y = g.y(j);
          const double fd = axis == Axis::x ? (fn(x + h, y) - fn(x - h, y)) / (2 * h)
                                            : (fn(x, y + h) - fn(x, y - h)) / (2 * h);
          err = std::max(err, std::abs(d(i, j) - fd));
        }
      }
      EXPECT_LE(err, h * h / 6.0 * bound3 * 1.0001 + 1e-11);
      if (prev_err > 0.0) {
        EXPECT_NEAR(prev_err / err, 4.0, 0.05);
      }
      prev_err = err;
    }
  }
}

TEST(Velocity, SingleModeShear) {
  const Grid g(16, 16);
  const auto omega = forward(RealField::sample(g, [](double, double y) { return -std::sin(y); }));
  const Velocity u = velocity_from_vorticity(omega);
  const RealField u1 = inverse(u.u1);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) EXPECT_NEAR(u1(i, j), -std::cos(g.y(j)), 1e-14);
  }
  EXPECT_LT(max_coeff(u.u2), 1e-16);
}

TEST(Velocity, ZeroVorticity) {
  const Grid g(8, 8);
  const Velocity u = velocity_from_vorticity(SpectralField(g));
  EXPECT_EQ(max_coeff(u.u1), 0.0);
  EXPECT_EQ(max_coeff(u.u2), 0.0);
}

TEST(Velocity, NonzeroMeanIsRejected) {
  const Grid g(8, 8);
  SpectralField omega(g);
  omega.set_mode(0, 0, 1.0);
  EXPECT_THROW(velocity_from_vorticity(omega), InputError);
}

TEST(Velocity, DivergenceFreeAndCurlReproducesVorticity) {
  const Grid g(32, 32);
  for (int seed = 0; seed < 20; ++seed) {
    const SpectralField omega = random_field(g, 10, 77 + seed, true);
    const Velocity u = velocity_from_vorticity(omega);
    const double grad = std::sqrt(l2_norm_squared(derivative(u.u1, Axis::x)) +
                                  l2_norm_squared(derivative(u.u1, Axis::y)) +
                                  l2_norm_squared(derivative(u.u2, Axis::x)) +
                                  l2_norm_squared(derivative(u.u2, Axis::y)));
    EXPECT_LE(l2_norm(divergence(u)), 1e-12 * grad);
    EXPECT_LE(l2_norm(curl(u) - omega), 1e-12 * l2_norm(omega));
  }
}

TEST(Dealias, TwoThirdsRuleInstance) {
  const Grid g(12, 12);
  SpectralField f(g);
  f.set_mode(4, 0, 1.0);
  f.set_mode(5, 0, 1.0);
  f.set_mode(0, 4, 1.0);
  f.set_mode(0, 5, 1.0);
  const SpectralField d = dealias(f);
  EXPECT_EQ(d.mode(4, 0), Complex(1.0));
  EXPECT_EQ(d.mode(5, 0), Complex(0.0));
  EXPECT_EQ(d.mode(0, 4), Complex(1.0));
  EXPECT_EQ(d.mode(0, 5), Complex(0.0));
}

TEST(Dealias, Idempotent) {
  const Grid g(24, 32);
  const SpectralField once = dealias(random_field(g, 11, 9));
  EXPECT_TRUE(is_dealiased(once));
  EXPECT_EQ(max_coeff_diff(dealias(once), once), 0.0);
}

TEST(Dealias, ProductMatchesExactConvolution) {
  const Grid g(32, 32);
  const int kc = dealias_cutoff(g.nx);
  const SpectralField a = dealias(random_field(g, 15, 21));
  const SpectralField b = dealias(random_field(g, 15, 22));
  const SpectralField p = dealias(product(a, b));
  double worst = 0.0;
  for (int mx = -kc; mx <= kc; ++mx) {
    for (int my = -kc; my <= kc; ++my) {
      Complex conv{};
      for (int kx = -kc; kx <= kc; ++kx) {
        for (int ky = -kc; ky <= kc; ++ky) conv += a.mode(kx, ky) * b.mode(mx - kx, my - ky);
      }
      worst = std::max(worst, std::abs(conv - p.mode(mx, my)));
    }
  }
  EXPECT_LE(worst, 1e-12 * max_coeff(p));
}

TEST(Dealias, DerivativeCommutesOnDealiasedFields) {
  const Grid g(32, 32);
  const SpectralField f = dealias(random_field(g, 15, 4));
  for (Axis axis : {Axis::x, Axis::y}) {
    EXPECT_EQ(max_coeff_diff(derivative(dealias(f), axis), dealias(derivative(f, axis))), 0.0);
  }
}

TEST(Norms, SineL2) {
  const Grid g(16, 16);
  const auto f = forward(RealField::sample(g, [](double x, double) { return std::sin(x); }));
  const std::vector<double> qs{2.0, 4.0};
  const NormSet n = norms(f, qs);
  EXPECT_NEAR(n.l2, pi * std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(n.lq.at(2.0), pi * std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(n.linf, 1.0, 1e-14);
  EXPECT_NEAR(n.dx_l2, pi * std::sqrt(2.0), 1e-13);
  EXPECT_EQ(n.dy_l2, 0.0);
}

TEST(Norms, ZeroField) {
  const Grid g(8, 8);
  const std::vector<double> qs{1.0, 3.0};
  const NormSet n = norms(SpectralField(g), qs);
  EXPECT_EQ(n.l2, 0.0);
  EXPECT_EQ(n.linf, 0.0);
  EXPECT_EQ(n.h1, 0.0);
  EXPECT_EQ(n.lq.at(1.0), 0.0);
  EXPECT_EQ(n.lq.at(3.0), 0.0);
}

TEST(Norms, RejectsBadExponent) {
  const Grid g(8, 8);
  const std::vector<double> qs{0.5};
  EXPECT_THROW(norms(SpectralField(g), qs), InputError);
}

TEST(Norms, L4OfProductOfSinesMatchesFineQuadrature) {
  // 4096^2 trapezoidal oracle, evaluated directly
  const int m = 4096;
  const double h = 2 * pi / m;
  std::vector<double> s4(m);
  for (int i = 0; i < m; ++i) s4[i] = std::pow(std::sin(i * h), 4);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += s4[i] * s4[j];
    sum += row;
  }
  const double oracle = std::pow(sum * h * h, 0.25);

  const Grid g(32, 32);
  const auto f = forward(RealField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); }));
  EXPECT_NEAR(lq_norm(f, 4.0), oracle, 1e-10);
}

TEST(Norms, ParsevalAndInternalConsistency) {
  const Grid g(32, 32);
  const std::vector<double> qs{1.0, 2.0, 3.0, 4.0, 8.0};
  for (int seed = 0; seed < 25; ++seed) {
    const SpectralField f = random_field(g, 8, 300 + seed);
    const NormSet n = norms(f, qs);
    EXPECT_NEAR(n.lq.at(2.0), n.l2, 1e-12 * n.l2);
    EXPECT_NEAR(n.h1 * n.h1, n.l2 * n.l2 + n.dx_l2 * n.dx_l2 + n.dy_l2 * n.dy_l2, 1e-12 * n.h1 * n.h1);
    for (double q : qs) {
      if (q < 2.0) continue;
      const double bound = std::pow(n.linf, 1.0 - 2.0 / q) * std::pow(n.l2, 2.0 / q);
      EXPECT_LE(n.lq.at(q), bound * (1.0 + 1e-10)) << "q=" << q;
    }
  }
}

TEST(Norms, LinfFindsOffGridPeak) {
  const Grid g(16, 16);
  const auto f = forward(RealField::sample(g, [](double x, double y) {
    return 2.0 * std::cos(x - 0.123) * std::cos(2 * y + 0.4);
  }));
  EXPECT_LT(grid_max_abs(inverse(f)), 1.99);
  EXPECT_NEAR(linf_norm(f), 2.0, 1e-13);
}

TEST(IntegralProduct, AnalyticPairs) {
  const Grid g(16, 16);
  const auto s = forward(RealField::sample(g, [](double x, double) { return std::sin(x); }));
  const auto c = forward(RealField::sample(g, [](double x, double) { return std::cos(x); }));
  EXPECT_NEAR(integral_product(s, s), 2 * pi * pi, 1e-12);
  EXPECT_NEAR(integral_product(s, c), 0.0, 1e-13);
}

TEST(IntegralProduct, TripleMatchesModeSum) {
  const Grid g(16, 16);
  const int k = 7;
  const SpectralField f = random_field(g, k, 1), gg = random_field(g, k, 2), h = random_field(g, k, 3);
  // integral of f g h = area * sum_{a+b+c=0} f_a g_b h_c
  Complex sum{};
  for (int ax = -k; ax <= k; ++ax)
    for (int ay = -k; ay <= k; ++ay)
      for (int bx = -k; bx <= k; ++bx)
        for (int by = -k; by <= k; ++by) {
          sum += f.mode(ax, ay) * gg.mode(bx, by) * h.mode(-ax - bx, -ay - by);
        }
  const double oracle = Grid::area() * sum.real();
  EXPECT_NEAR(integral_product(f, gg, h), oracle, 1e-11 * std::max(1.0, std::abs(oracle)));
}

TEST(IntegralProduct, RejectsMismatchedGrids) {
  EXPECT_THROW(integral_product(SpectralField(Grid(8, 8)), SpectralField(Grid(16, 8))), InputError);
}

TEST(Pressure, BuoyancyOnlySingleMode) {
  const Grid g(16, 16);
  State s{SpectralField(g), forward(RealField::sample(g, [](double, double y) { return std::cos(y); })), 0.0};
  const RealField p = inverse(pressure_from_state(s));
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) EXPECT_NEAR(p(i, j), std::sin(g.y(j)), 1e-14);
}

TEST(Pressure, ZeroState) {
  const Grid g(8, 8);
  const State s{SpectralField(g), SpectralField(g), 0.0};
  EXPECT_EQ(max_coeff(pressure_from_state(s)), 0.0);
}

TEST(Pressure, MomentumTendencyIsDivergenceFree) {
  const Grid g(48, 48);
  for (int seed = 0; seed < 5; ++seed) {
    State s = abq::test::random_state(g, 16, 40 + seed);
    s.omega = dealias(s.omega);
    s.theta = dealias(s.theta);
    const Velocity u = velocity_from_vorticity(s.omega);
    const Velocity adv = momentum_advection(u);
    const SpectralField p = pressure_from_state(s);
    // du/dt = -(u.grad)u - grad p + theta e2 + d_yy u
    Velocity tend{SpectralField(g) - adv.u1 - derivative(p, Axis::x) + second_derivative(u.u1, Axis::y),
                  SpectralField(g) - adv.u2 - derivative(p, Axis::y) + s.theta + second_derivative(u.u2, Axis::y)};
    tend.u2.at(0, 0) = {};  // the mean of theta e2 is balanced outside the periodic pressure
    EXPECT_LE(l2_norm(divergence(tend)), 1e-10);
  }
}
