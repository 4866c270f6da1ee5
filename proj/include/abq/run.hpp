#pragma once

#include <functional>
#include <string>

#include "abq/series.hpp"

namespace abq {

enum class RunStatus { completed, blowup, underresolved, unstable };

struct RunResult {
  RunStatus status = RunStatus::completed;
  std::string message;
  Series series;
  State final_state;  // last valid state
  long steps = 0;
  double max_div_ratio = 0.0;
  long tail_warnings = 0;  // steps with tail indicator above kTailWarning
};

/// Called after each recorded sample, including the initial one.
using OutputHook = std::function<void(const State&, const DiagnosticsRecord&)>;

/// Largest CFL number accepted for a fixed step (linear stability limit of
/// SSP-RK3 on the imaginary axis).
inline constexpr double kCflLimit = 1.7320508075688772;

/// ‖div u‖ / ‖grad u‖ for the velocity of omega (0 for a fluid at rest).
double divergence_ratio(const SpectralField& omega);

/// Integrates to config.t_end and records a diagnostics sample every
/// output_every (and at t_end). Blow-up, a tail indicator above kTailHalt
/// or a fixed step beyond kCflLimit stop the run; the series up to that
/// point and the last valid state are returned.
RunResult run_simulation(const State& initial, const SolverConfig& config, const MonitorConfig& monitor,
                         const OutputHook& hook = {});

MonitorConfig monitor_for(const SolverConfig& config, MonitorConfig base = {});

}  // namespace abq
