#pragma once

#include <utility>

#include "abq/field.hpp"

namespace abq {

enum class Axis { x, y };

/// Spectral derivative along `axis`; the Nyquist mode of that axis is zeroed.
SpectralField derivative(const SpectralField& f, Axis axis);

/// Second derivative along `axis` (multiplier -k^2, Nyquist zeroed).
SpectralField second_derivative(const SpectralField& f, Axis axis);

/// True when the k = 0 coefficient is zero up to round-off (1e-12 of the
/// largest coefficient, or absolute 1e-12 for small fields).
bool has_zero_mean(const SpectralField& f);

/// Solves lap(psi) = f for the mean-zero psi. Requires a zero mean mode.
SpectralField inverse_laplacian(const SpectralField& f);

struct Velocity {
  SpectralField u1;
  SpectralField u2;
};

/// Biot-Savart recovery: u = (-d_y psi, d_x psi) with lap(psi) = omega.
/// Throws InputError when omega has a nonzero mean.
Velocity velocity_from_vorticity(const SpectralField& omega);

/// d_x u2 - d_y u1.
SpectralField curl(const Velocity& u);
/// d_x u1 + d_y u2.
SpectralField divergence(const Velocity& u);

/// Largest retained |k| per axis under the 2/3 rule: floor(n/3).
int dealias_cutoff(int n);
/// Zeroes every mode with |k_x| > nx/3 or |k_y| > ny/3.
SpectralField dealias(SpectralField f);
void dealias_in_place(SpectralField& f);
[[nodiscard]] bool is_dealiased(const SpectralField& f);

/// Pseudo-spectral product a*b on the grid of a (no truncation applied).
SpectralField product(const SpectralField& a, const SpectralField& b);

}  // namespace abq
