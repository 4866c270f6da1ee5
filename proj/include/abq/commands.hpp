#pragma once

#include <filesystem>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abq/checks.hpp"
#include "abq/config.hpp"

namespace abq::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kCheckFailure = 3, kHalt = 4 };

/// Runs a configuration. Writes <out>/series.csv, <out>/snapshots/*.snap
/// (initial, every snapshot_every, final) and <out>/summary.json. On a halt
/// the partial series and <out>/last_valid.snap are written and kHalt returned.
int simulate(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
             std::ostream& log);

/// Evaluates one named check or "all" on a series file and prints a table.
int monitor(const std::filesystem::path& series, const std::string& check, std::ostream& out);

/// Results of one convergence study.
struct ConvergenceResult {
  std::vector<int> resolutions;
  std::vector<double> spatial_errors;
  std::vector<double> dts;
  std::vector<double> temporal_errors;  // difference between successive dt levels
  std::vector<double> spatial_ratios;
  std::vector<double> temporal_orders;
  bool pass = false;
  std::string note;
};

/// "diffusion": theta = cos y, omega = 0, nu = kappa = 1 against the exact
/// solution exp(-t) cos y at N = 8, 16, ... (levels grids) and dt halvings.
/// "taylor-vortex": inviscid taylor-vortex IC at N = 32, 64, ... against an
/// N = 512 reference at equal dt; temporal order from dt halvings of the
/// dissipative flow at N = 64.
ConvergenceResult convergence_study(const std::string& test, int levels);
int convergence(const std::string& test, int levels, std::ostream& out);

/// Lockstep twin runs: the config's IC and the same IC with theta shifted by
/// eps cos(y) / ‖cos y‖_2.
struct TwinResult {
  std::map<double, double> c_hat;  // eps -> estimate
  std::map<double, std::vector<TwinSample>> samples;
  std::map<double, CheckReport> reports;
  CheckReport stability;
};
TwinResult twin_study(const RunConfig& config, const std::vector<double>& eps);
int twin(const std::filesystem::path& config, const std::vector<double>& eps,
         const std::optional<std::filesystem::path>& out_dir, std::ostream& out);

struct IneqlabOptions {
  std::uint64_t seed = 1;
  std::optional<int> samples;          // holder 1000, embedding 200
  std::vector<double> q;               // holder, default {2, 3, 4}
  std::vector<double> p;               // embedding, default {4, 4}
  std::vector<double> lambda;          // embedding, default {0.5, 1}
  std::optional<double> K, A0, alpha, T;  // gronwall: one case if any is set, else the standard 27
  std::string family = "proportional";
  std::optional<std::filesystem::path> out_dir;  // report goes to <out>/ineqlab_<name>.json
};

/// Runs one inequality-lab study ("holder", "embedding" or "gronwall"),
/// prints a summary and writes a JSON report.
int ineqlab(const std::string& name, const IneqlabOptions& options, std::ostream& out);

}  // namespace abq::cli
