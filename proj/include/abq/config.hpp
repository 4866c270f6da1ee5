#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "abq/diagnostics.hpp"
#include "abq/initial.hpp"

namespace abq {

/// Contents of a run configuration file:
///
///   {
///     "solver":  {"nx", "ny", "nu", "kappa", "dt" (number or "auto"), "t_end",
///                 "cfl_safety", "dealias"},
///     "ic":      {"name", "params": {...}, "seed"},
///     "monitor": {"qset", "r_grid", "output_every", "snapshot_every"},
///     "out_dir": "path"
///   }
///
/// nx and ny are required; everything else has a default. Unknown keys are errors.
struct RunConfig {
  SolverConfig solver;
  IcSpec ic;
  MonitorConfig monitor;
  std::optional<double> snapshot_every;
  std::filesystem::path out_dir;
};

/// Throws ConfigError with the offending key in the message.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace abq
