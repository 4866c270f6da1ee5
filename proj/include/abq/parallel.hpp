#pragma once

namespace abq::parallel {

/// Thread cap used by every OpenMP kernel and by the FFT plans.
int max_threads();

/// Overrides the cap. Values < 1 are clamped to 1.
void set_max_threads(int n);

/// Reads ABQ_THREADS (if set) and applies it as the thread cap.
void configure_from_env();

}  // namespace abq::parallel
