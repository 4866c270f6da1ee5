#include "abq/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "abq/errors.hpp"
#include "abq/series.hpp"
#include "abq/transform.hpp"

namespace abq {
namespace {

using nlohmann::json;

void append_le(std::string& out, double v) {
  auto bytes = std::bit_cast<std::array<char, 8>>(v);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.append(bytes.data(), bytes.size());
}

double read_le(const char* p) {
  std::array<char, 8> bytes;
  std::memcpy(bytes.data(), p, 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<double>(bytes);
}

template <class T>
T header_value(const json& h, const char* key) {
  if (!h.contains(key)) throw SchemaError(std::string("snapshot header lacks '") + key + "'");
  try {
    return h[key].get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("snapshot header field '") + key + "' has the wrong type");
  }
}

}  // namespace

Snapshot snapshot_of(const State& state) {
  const Grid& g = state.omega.grid();
  return {g.nx, g.ny, state.t, {"omega", "theta"}, {inverse(state.omega), inverse(state.theta)}};
}

State state_from(const Snapshot& snap) {
  auto find = [&](const std::string& name) -> const RealField& {
    const auto it = std::find(snap.names.begin(), snap.names.end(), name);
    if (it == snap.names.end()) throw SchemaError("snapshot has no field '" + name + "'");
    return snap.fields[static_cast<std::size_t>(it - snap.names.begin())];
  };
  State s{forward(find("omega")), forward(find("theta")), snap.time};
  s.omega.at(0, 0) = Complex{};
  return s;
}

std::string encode_snapshot(const Snapshot& snap) {
  if (snap.names.size() != snap.fields.size()) throw InputError("snapshot names and fields differ in count");
  json h;
  h["format"] = "abq-snapshot";
  h["version"] = kSnapshotVersion;
  h["nx"] = snap.nx;
  h["ny"] = snap.ny;
  h["time"] = snap.time;
  h["fields"] = snap.names;
  h["dtype"] = "f64";
  h["endianness"] = "little";
  h["layout"] = "row-major, x-major";
  std::string out = h.dump() + "\n";
  const std::size_t n = static_cast<std::size_t>(snap.nx) * snap.ny;
  out.reserve(out.size() + 8 * n * snap.fields.size());
  for (const auto& f : snap.fields) {
    if (f.grid().nx != snap.nx || f.grid().ny != snap.ny) throw InputError("snapshot field has the wrong grid");
    for (double v : f.data()) append_le(out, v);
  }
  return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
  const auto nl = bytes.find('\n');
  if (nl == std::string::npos) throw SchemaError("snapshot header is not terminated");
  json h;
  try {
    h = json::parse(bytes.substr(0, nl));
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("snapshot header is not JSON: ") + e.what());
  }
  if (header_value<std::string>(h, "format") != "abq-snapshot") throw SchemaError("not a snapshot file");
  if (header_value<int>(h, "version") != kSnapshotVersion) throw SchemaError("unsupported snapshot version");
  if (header_value<std::string>(h, "dtype") != "f64" || header_value<std::string>(h, "endianness") != "little" ||
      header_value<std::string>(h, "layout") != "row-major, x-major") {
    throw SchemaError("unsupported snapshot encoding");
  }
  Snapshot s;
  s.nx = header_value<int>(h, "nx");
  s.ny = header_value<int>(h, "ny");
  s.time = header_value<double>(h, "time");
  s.names = header_value<std::vector<std::string>>(h, "fields");
  Grid g;
  try {
    g = Grid(s.nx, s.ny);
  } catch (const InputError& e) {
    throw SchemaError(e.what());
  }
  const std::size_t n = static_cast<std::size_t>(s.nx) * s.ny;
  const std::size_t expected = 8 * n * s.names.size();
  if (bytes.size() - nl - 1 != expected) {
    throw SchemaError("snapshot payload has " + std::to_string(bytes.size() - nl - 1) + " bytes, expected " +
                      std::to_string(expected));
  }
  const char* p = bytes.data() + nl + 1;
  for (std::size_t f = 0; f < s.names.size(); ++f) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k, p += 8) v[k] = read_le(p);
    s.fields.emplace_back(g, std::move(v));
  }
  return s;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  write_file_atomic(path, encode_snapshot(snap));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot open snapshot " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return decode_snapshot(ss.str());
}

}  // namespace abq
