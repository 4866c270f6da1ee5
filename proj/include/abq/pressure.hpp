#pragma once

#include "abq/operators.hpp"
#include "abq/state.hpp"

namespace abq {

/// (u . grad) u, formed pseudo-spectrally; truncated by the 2/3 rule when
/// `dealias` is set.
Velocity momentum_advection(const Velocity& u, bool dealias = true);

/// Mean-zero pressure solving lap(p) = d_y theta - div((u . grad) u).
SpectralField pressure_from_state(const State& state, bool dealias = true);

}  // namespace abq
