#pragma once

#include <cmath>
#include <random>

#include "abq/field.hpp"
#include "abq/state.hpp"

namespace abq::test {

// Random real field with modes |kx|, |ky| <= kmax and amplitudes decaying
// like exp(-|k|^2 / (2 kmax)).
inline SpectralField random_field(const Grid& g, int kmax, std::uint64_t seed,
                                  bool zero_mean = false) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField f(g);
  for (int kx = -kmax; kx <= kmax; ++kx) {
    for (int ky = 0; ky <= kmax; ++ky) {
      if (ky == 0 && kx < 0) continue;
      const double decay = std::exp(-(kx * kx + ky * ky) / (2.0 * kmax));
      Complex c{normal(rng) * decay, normal(rng) * decay};
      if (kx == 0 && ky == 0) c = {zero_mean ? 0.0 : c.real(), 0.0};
      f.set_mode(kx, ky, c);
    }
  }
  return f;
}

inline State random_state(const Grid& g, int kmax, std::uint64_t seed) {
  return State{random_field(g, kmax, seed, true), random_field(g, kmax, seed + 7919), 0.0};
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.coeffs().size(); ++n) {
    m = std::max(m, std::abs(a.coeffs()[n] - b.coeffs()[n]));
  }
  return m;
}

inline double max_coeff(const SpectralField& a) {
  double m = 0.0;
  for (const auto& c : a.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace abq::test
