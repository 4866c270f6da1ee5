#include "abq/lab/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "abq/errors.hpp"

namespace abq::lab {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::gaussian: return "gaussian";
    case Kind::gaussian_mixture: return "gaussian-mixture";
    case Kind::trig_bump: return "trig-bump";
    case Kind::random_bandlimited_bump: return "random-bandlimited-bump";
  }
  return "?";
}

Kind kind_from_name(const std::string& name) {
  for (Kind k : {Kind::gaussian, Kind::gaussian_mixture, Kind::trig_bump, Kind::random_bandlimited_bump}) {
    if (name == kind_name(k)) return k;
  }
  throw InputError("unknown test-function family '" + name + "'");
}

Value TestFunction::eval(double x, double y) const {
  Value v;
  for (const Term& t : terms) {
    const double gx = -(x - t.cx) / (t.sx * t.sx);
    const double gy = -(y - t.cy) / (t.sy * t.sy);
    const double g = std::exp(-0.5 * ((x - t.cx) * (x - t.cx) / (t.sx * t.sx) +
                                      (y - t.cy) * (y - t.cy) / (t.sy * t.sy)));
    const double arg = t.wx * x + t.wy * y + t.phase;
    const double c = std::cos(arg);
    const double s = std::sin(arg);
    // derivatives of G = g and C = c
    const double Gx = gx * g, Gy = gy * g;
    const double Gxx = (gx * gx - 1.0 / (t.sx * t.sx)) * g;
    const double Gyy = (gy * gy - 1.0 / (t.sy * t.sy)) * g;
    const double Gxy = gx * gy * g;
    const double Cx = -t.wx * s, Cy = -t.wy * s;
    const double Cxx = -t.wx * t.wx * c, Cyy = -t.wy * t.wy * c, Cxy = -t.wx * t.wy * c;
    v.f += t.a * c * g;
    v.fx += t.a * (Cx * g + c * Gx);
    v.fy += t.a * (Cy * g + c * Gy);
    v.fxx += t.a * (Cxx * g + 2.0 * Cx * Gx + c * Gxx);
    v.fyy += t.a * (Cyy * g + 2.0 * Cy * Gy + c * Gyy);
    v.fxy += t.a * (Cxy * g + Cx * Gy + Cy * Gx + c * Gxy);
  }
  return v;
}

bool TestFunction::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.a == 0.0; });
}

double TestFunction::min_scale() const {
  double s = std::numeric_limits<double>::infinity();
  for (const Term& t : terms) {
    s = std::min({s, t.sx, t.sy});
    const double w = std::hypot(t.wx, t.wy);
    if (w > 0.0) s = std::min(s, 1.0 / w);
  }
  return std::isfinite(s) ? s : 1.0;
}

double TestFunction::half_width_x() const {
  double l = 0.0;
  for (const Term& t : terms) l = std::max(l, std::abs(t.cx) + 8.0 * t.sx);
  return l > 0.0 ? l : 1.0;
}

double TestFunction::half_width_y() const {
  double l = 0.0;
  for (const Term& t : terms) l = std::max(l, std::abs(t.cy) + 8.0 * t.sy);
  return l > 0.0 ? l : 1.0;
}

TestFunction TestFunction::dilated(double a) const {
  TestFunction out = *this;
  for (Term& t : out.terms) {
    t.cx /= a;
    t.cy /= a;
    t.sx /= a;
    t.sy /= a;
    t.wx *= a;
    t.wy *= a;
  }
  return out;
}

TestFunction TestFunction::scaled(double s) const {
  TestFunction out = *this;
  for (Term& t : out.terms) t.a *= s;
  return out;
}

TestFunction unit_gaussian() { return {Kind::gaussian, {Term{}}}; }

TestFunction zero_function() { return {Kind::gaussian, {}}; }

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double signed_amplitude(std::mt19937_64& rng) {
  const double m = uniform(rng, 0.5, 2.0);
  return uniform(rng, 0.0, 1.0) < 0.5 ? -m : m;
}

Term gaussian_term(std::mt19937_64& rng) {
  Term t;
  t.a = signed_amplitude(rng);
  t.cx = uniform(rng, -2.0, 2.0);
  t.cy = uniform(rng, -2.0, 2.0);
  t.sx = uniform(rng, 0.5, 2.0);
  t.sy = uniform(rng, 0.5, 2.0);
  return t;
}

}  // namespace

TestFunction random_member(Kind kind, std::mt19937_64& rng) {
  TestFunction f{kind, {}};
  switch (kind) {
    case Kind::gaussian:
      f.terms.push_back(gaussian_term(rng));
      break;
    case Kind::gaussian_mixture: {
      const int n = std::uniform_int_distribution<int>(2, 4)(rng);
      for (int k = 0; k < n; ++k) f.terms.push_back(gaussian_term(rng));
      break;
    }
    case Kind::trig_bump: {
      Term t = gaussian_term(rng);
      t.sx = uniform(rng, 0.7, 2.0);
      t.sy = uniform(rng, 0.7, 2.0);
      t.wx = uniform(rng, -2.0, 2.0);
      t.wy = uniform(rng, -2.0, 2.0);
      t.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      f.terms.push_back(t);
      break;
    }
    case Kind::random_bandlimited_bump: {
      const Term env = gaussian_term(rng);
      const double sx = uniform(rng, 1.0, 2.0);
      const double sy = uniform(rng, 1.0, 2.0);
      const int n = std::uniform_int_distribution<int>(3, 6)(rng);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int k = 0; k < n; ++k) {
        Term t = env;
        t.sx = sx;
        t.sy = sy;
        t.a = normal(rng) / std::sqrt(static_cast<double>(n));
        const double r = uniform(rng, 0.0, 3.0);
        const double ang = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        t.wx = r * std::cos(ang);
        t.wy = r * std::sin(ang);
        t.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        f.terms.push_back(t);
      }
      break;
    }
  }
  return f;
}

TestFunction random_function(std::mt19937_64& rng) {
  const int k = std::uniform_int_distribution<int>(0, 3)(rng);
  return random_member(static_cast<Kind>(k), rng);
}

}  // namespace abq::lab
