#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "abq/diagnostics.hpp"

namespace abq {

inline constexpr int kSeriesVersion = 1;

/// Run parameters stored alongside a diagnostics series.
struct SeriesMeta {
  int version = kSeriesVersion;
  int nx = 0;
  int ny = 0;
  double nu = 1.0;
  double kappa = 1.0;
  std::vector<double> qset;
  std::vector<double> r_grid;
};

struct Series {
  SeriesMeta meta;
  std::vector<DiagnosticsRecord> records;
};

/// Column names in file order for the given q set.
std::vector<std::string> series_columns(const std::vector<double>& qset);

/// CSV with a "# abq-series version=N" line, "# key=value" metadata lines,
/// one header row and one row per record. Doubles use 17 significant digits.
void write_series(std::ostream& out, const Series& series);
std::string series_to_csv(const Series& series);
/// Written to a temporary file in the same directory, then renamed.
void save_series(const std::filesystem::path& path, const Series& series);

/// Throws SchemaError on a missing or mismatched version line, a missing
/// column (named in the message) or a malformed value.
Series read_series(std::istream& in);
Series load_series(const std::filesystem::path& path);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace abq
