#include "abq/initial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "abq/errors.hpp"
#include "abq/norms.hpp"
#include "abq/operators.hpp"
#include "abq/transform.hpp"

namespace abq {
namespace {

using std::numbers::pi;

struct IcInfo {
  std::vector<std::string> params;
  std::vector<double> defaults;
  bool seeded;
};

const std::map<std::string, IcInfo>& registry() {
  static const std::map<std::string, IcInfo> r = {
      {"taylor-vortex", {{"amplitude", "buoyancy", "rho"}, {1.0, 1.0, 0.55}, false}},
      {"shear-front", {{"velocity", "delta", "perturbation"}, {1.0, 0.3, 0.1}, false}},
      {"single-mode", {{"omega_amplitude", "theta_amplitude", "m"}, {0.0, 1.0, 1.0}, false}},
      {"random-bandlimited",
       {{"kmax", "slope", "omega_l2", "theta_l2"}, {8.0, 2.0, 2.0 * pi, 2.0 * pi}, true}},
      {"rough", {{"decay", "amplitude"}, {1.1, 1.0}, true}},
  };
  return r;
}

const IcInfo& info(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown initial condition '" + name + "'");
  return it->second;
}

// Resolved parameter value: given or default.
double param(const IcSpec& spec, const std::string& key) {
  const IcInfo& inf = info(spec.name);
  if (const auto it = spec.params.find(key); it != spec.params.end()) return it->second;
  const auto pos = std::find(inf.params.begin(), inf.params.end(), key) - inf.params.begin();
  return inf.defaults.at(static_cast<std::size_t>(pos));
}

SpectralField zero_mean(SpectralField f) {
  f.at(0, 0) = Complex{};
  return f;
}

// Poisson kernel (1 - r^2) / (1 - 2 r cos s + r^2) = 1 + 2 sum r^k cos(k s)
double poisson(double r, double s) { return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(s) + r * r); }

State taylor_vortex(const Grid& g, const IcSpec& spec) {
  const double a = param(spec, "amplitude");
  const double b = param(spec, "buoyancy");
  const double rho = param(spec, "rho");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("taylor-vortex: rho must lie in (0, 1)");
  const double pmax = (1.0 + rho) / (1.0 - rho);
  const RealField w = RealField::sample(g, [&](double x, double y) { return 2.0 * a * std::sin(x) * std::sin(y); });
  const RealField th = RealField::sample(
      g, [&](double x, double y) { return b * (poisson(rho, x) * poisson(rho, y) - 1.0) / (pmax * pmax); });
  return {zero_mean(forward(w)), forward(th), 0.0};
}

State shear_front(const Grid& g, const IcSpec& spec) {
  const double u = param(spec, "velocity");
  const double d = param(spec, "delta");
  const double eps = param(spec, "perturbation");
  if (!(d > 0.0)) throw ConfigError("shear-front: delta must be positive");
  // omega = -d_y u1 = -u cos y sech^2(sin y / d) / d
  const RealField w = RealField::sample(g, [&](double, double y) {
    const double c = std::cosh(std::sin(y) / d);
    return -u * std::cos(y) / (d * c * c);
  });
  const RealField th = RealField::sample(g, [&](double x, double y) {
    return std::tanh(std::cos(y) / d) + eps * std::sin(x) * std::cos(y);
  });
  return {zero_mean(forward(w)), forward(th), 0.0};
}

State single_mode(const Grid& g, const IcSpec& spec) {
  const double a = param(spec, "omega_amplitude");
  const double b = param(spec, "theta_amplitude");
  const double m = param(spec, "m");
  if (m != std::floor(m) || m < 1.0 || m >= g.ny / 2) {
    throw ConfigError("single-mode: m must be an integer in [1, ny/2)");
  }
  const int k = static_cast<int>(m);
  SpectralField w(g);
  SpectralField th(g);
  // -a m sin(k y) = (a m / 2) i e^{iky} + c.c.
  w.set_mode(0, k, Complex{0.0, 0.5 * a * m});
  th.set_mode(0, k, Complex{0.5 * b, 0.0});
  return {w, th, 0.0};
}

SpectralField scaled_to(SpectralField f, double l2) {
  const double n = l2_norm(f);
  if (n > 0.0) f *= l2 / n;
  return f;
}

State random_bandlimited(const Grid& g, const IcSpec& spec) {
  const double kmax_d = param(spec, "kmax");
  const double slope = param(spec, "slope");
  const int kmax = static_cast<int>(kmax_d);
  if (kmax_d != kmax || kmax < 1 || kmax >= std::min(g.nx, g.ny) / 2) {
    throw ConfigError("random-bandlimited: kmax must be an integer in [1, n/2)");
  }
  std::mt19937_64 rng(*spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&]() {
    SpectralField f(g);
    for (int kx = -kmax; kx <= kmax; ++kx) {
      for (int ky = 0; ky <= kmax; ++ky) {
        if (ky == 0 && kx <= 0) continue;
        const double k2 = kx * kx + ky * ky;
        if (k2 > kmax * kmax) continue;
        const double w = std::pow(1.0 + k2, -0.5 * slope);
        const double re = normal(rng);
        const double im = normal(rng);
        f.set_mode(kx, ky, w * Complex{re, im});
      }
    }
    return f;
  };
  SpectralField w = draw();
  SpectralField th = draw();
  return {scaled_to(std::move(w), param(spec, "omega_l2")), scaled_to(std::move(th), param(spec, "theta_l2")),
          0.0};
}

State rough(const Grid& g, const IcSpec& spec) {
  const double decay = param(spec, "decay");
  const double amp = param(spec, "amplitude");
  std::mt19937_64 rng(*spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  auto draw = [&]() {
    SpectralField f(g);
    for (int kx = -(g.nx / 2 - 1); kx <= g.nx / 2 - 1; ++kx) {
      for (int ky = 0; ky <= g.ny / 2 - 1; ++ky) {
        if (ky == 0 && kx <= 0) continue;
        const double a = amp * std::exp(-0.5 * std::abs(kx)) * std::pow(1.0 + ky, -decay);
        f.set_mode(kx, ky, std::polar(a, phase(rng)));
      }
    }
    return f;
  };
  SpectralField w = draw();
  SpectralField th = draw();
  return {w, th, 0.0};
}

}  // namespace

const std::vector<std::string>& ic_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

const std::vector<std::string>& ic_parameters(const std::string& name) { return info(name).params; }

bool ic_needs_seed(const std::string& name) { return info(name).seeded; }

State make_initial_state(const Grid& grid, const IcSpec& spec, bool dealias_on) {
  const IcInfo& inf = info(spec.name);
  for (const auto& [key, value] : spec.params) {
    if (std::find(inf.params.begin(), inf.params.end(), key) == inf.params.end()) {
      throw ConfigError("initial condition '" + spec.name + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' is not finite");
  }
  if (inf.seeded && !spec.seed) throw ConfigError("initial condition '" + spec.name + "' requires a seed");

  State s;
  if (spec.name == "taylor-vortex") s = taylor_vortex(grid, spec);
  else if (spec.name == "shear-front") s = shear_front(grid, spec);
  else if (spec.name == "single-mode") s = single_mode(grid, spec);
  else if (spec.name == "random-bandlimited") s = random_bandlimited(grid, spec);
  else s = rough(grid, spec);

  if (dealias_on) {
    dealias_in_place(s.omega);
    dealias_in_place(s.theta);
  }
  s.validate();
  return s;
}

}  // namespace abq
