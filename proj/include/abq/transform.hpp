#pragma once

#include "abq/field.hpp"

namespace abq {

/// Physical samples to normalized Fourier coefficients (c_k = mean of f e^{-ik.x}).
/// Hermitian symmetry of the self-paired columns is enforced on output.
SpectralField forward(const RealField& f);

/// Normalized coefficients back to physical samples on the field's grid.
RealField inverse(const SpectralField& f);

/// Zero-pads or truncates f onto another grid. Modes not representable on the
/// target are dropped; Nyquist rows/columns are dropped when they change meaning.
SpectralField resample(const SpectralField& f, const Grid& target);

/// Samples of f on a finer (or coarser) grid.
RealField inverse_on(const SpectralField& f, const Grid& target);

}  // namespace abq
