#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "abq/state.hpp"

namespace abq {

inline constexpr int kSnapshotVersion = 1;

/// Physical-space samples of named fields at one time.
///
/// File layout: one line of JSON
///   {"format":"abq-snapshot","version":1,"nx":..,"ny":..,"time":..,
///    "fields":[..],"dtype":"f64","endianness":"little","layout":"row-major, x-major"}
/// terminated by '\n', then 8 * nx * ny * fields bytes of little-endian
/// doubles, field after field, each indexed [i * ny + j] for x_i, y_j.
struct Snapshot {
  int nx = 0;
  int ny = 0;
  double time = 0.0;
  std::vector<std::string> names;
  std::vector<RealField> fields;
};

/// omega and theta samples of a state.
Snapshot snapshot_of(const State& state);
/// Inverse of snapshot_of (requires fields named omega and theta).
State state_from(const Snapshot& snap);

std::string encode_snapshot(const Snapshot& snap);
Snapshot decode_snapshot(const std::string& bytes);
/// Atomic: written to a temporary file, then renamed.
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
/// Throws SchemaError on a malformed header or a payload of the wrong length.
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace abq
