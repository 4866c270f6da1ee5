#include "abq/series.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "abq/errors.hpp"

namespace abq {
namespace {

using Accessor = std::function<double&(DiagnosticsRecord&)>;

const std::vector<std::pair<std::string, Accessor>>& scalar_columns() {
  using R = DiagnosticsRecord;
  static const std::vector<std::pair<std::string, Accessor>> cols = {
      {"u_h1", [](R& r) -> double& { return r.u_h1; }},
      {"theta_h1", [](R& r) -> double& { return r.theta_h1; }},
      {"dyu_h1", [](R& r) -> double& { return r.dyu_h1; }},
      {"dytheta_h1", [](R& r) -> double& { return r.dytheta_h1; }},
      {"dxu_l2", [](R& r) -> double& { return r.dxu_l2; }},
      {"dxtheta_l2", [](R& r) -> double& { return r.dxtheta_l2; }},
      {"dyu_l2", [](R& r) -> double& { return r.dyu_l2; }},
      {"dytheta_l2", [](R& r) -> double& { return r.dytheta_l2; }},
      {"dxyu_l2", [](R& r) -> double& { return r.dxyu_l2; }},
      {"dxytheta_l2", [](R& r) -> double& { return r.dxytheta_l2; }},
      {"growth_ratio", [](R& r) -> double& { return r.growth_ratio; }},
      {"u2_linf", [](R& r) -> double& { return r.u2_linf; }},
      {"dt_u_l2", [](R& r) -> double& { return r.dt_u_l2; }},
      {"dt_theta_l2", [](R& r) -> double& { return r.dt_theta_l2; }},
      {"h1_residual", [](R& r) -> double& { return r.h1_residual; }},
      {"f_local", [](R& r) -> double& { return r.f_local; }},
      {"int_dyu_sq", [](R& r) -> double& { return r.integrals.dyu_sq; }},
      {"int_dytheta_sq", [](R& r) -> double& { return r.integrals.dytheta_sq; }},
      {"int_fdiss", [](R& r) -> double& { return r.integrals.fdiss; }},
      {"int_dx_sq", [](R& r) -> double& { return r.integrals.dx_sq; }},
      {"int_dt_sq", [](R& r) -> double& { return r.integrals.dt_sq; }},
      {"div_ratio", [](R& r) -> double& { return r.div_ratio; }},
      {"tail_indicator", [](R& r) -> double& { return r.tail; }},
      {"cfl_number", [](R& r) -> double& { return r.cfl; }},
      {"theta_mean", [](R& r) -> double& { return r.theta_mean; }},
  };
  return cols;
}

const std::vector<std::pair<std::string, Accessor>>& leading_columns() {
  using R = DiagnosticsRecord;
  static const std::vector<std::pair<std::string, Accessor>> cols = {
      {"t", [](R& r) -> double& { return r.t; }},
      {"u_l2", [](R& r) -> double& { return r.u_l2; }},
      {"theta_l2", [](R& r) -> double& { return r.theta_l2; }},
      {"theta_linf", [](R& r) -> double& { return r.theta_linf; }},
  };
  return cols;
}

const std::string kLqPrefix = "theta_lq_";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt(v[i]);
  return s;
}

double parse_double(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw SchemaError("malformed value '" + text + "' for " + what);
  }
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_double(text, what);
  if (v != static_cast<int>(v)) throw SchemaError("non-integer value for " + what);
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(parse_double(item, what));
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void strip_cr(std::string& s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

}  // namespace

std::vector<std::string> series_columns(const std::vector<double>& qset) {
  std::vector<std::string> cols;
  for (const auto& [name, acc] : leading_columns()) cols.push_back(name);
  for (double q : qset) cols.push_back(kLqPrefix + fmt(q));
  for (const auto& [name, acc] : scalar_columns()) cols.push_back(name);
  return cols;
}

void write_series(std::ostream& out, const Series& s) {
  out << "# abq-series version=" << kSeriesVersion << '\n';
  out << "# nx=" << s.meta.nx << '\n';
  out << "# ny=" << s.meta.ny << '\n';
  out << "# nu=" << fmt(s.meta.nu) << '\n';
  out << "# kappa=" << fmt(s.meta.kappa) << '\n';
  out << "# qset=" << join(s.meta.qset) << '\n';
  out << "# r_grid=" << join(s.meta.r_grid) << '\n';
  const auto cols = series_columns(s.meta.qset);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (DiagnosticsRecord r : s.records) {
    std::string line;
    for (const auto& [name, acc] : leading_columns()) line += fmt(acc(r)) + ",";
    for (double q : s.meta.qset) {
      const auto it = r.theta_lq.find(q);
      if (it == r.theta_lq.end()) throw InputError("record lacks theta L^q for q = " + fmt(q));
      line += fmt(it->second) + ",";
    }
    for (const auto& [name, acc] : scalar_columns()) line += fmt(acc(r)) + ",";
    line.pop_back();
    out << line << '\n';
  }
}

std::string series_to_csv(const Series& series) {
  std::ostringstream out;
  write_series(out, series);
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void save_series(const std::filesystem::path& path, const Series& series) {
  write_file_atomic(path, series_to_csv(series));
}

Series read_series(std::istream& in) {
  Series s;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty series file");
  strip_cr(line);
  const std::string tag = "# abq-series version=";
  if (line.rfind(tag, 0) != 0) throw SchemaError("missing series version line");
  s.meta.version = parse_int(line.substr(tag.size()), "version");
  if (s.meta.version != kSeriesVersion) {
    throw SchemaError("series version " + std::to_string(s.meta.version) + " is not supported (expected " +
                      std::to_string(kSeriesVersion) + ")");
  }

  std::map<std::string, std::string> meta;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.rfind("# ", 0) != 0) break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
  }
  for (const char* key : {"nx", "ny", "nu", "kappa"}) {
    if (!meta.contains(key)) throw SchemaError(std::string("missing metadata '") + key + "'");
  }
  s.meta.nx = parse_int(meta["nx"], "nx");
  s.meta.ny = parse_int(meta["ny"], "ny");
  s.meta.nu = parse_double(meta["nu"], "nu");
  s.meta.kappa = parse_double(meta["kappa"], "kappa");
  if (meta.contains("r_grid")) s.meta.r_grid = parse_list(meta["r_grid"], "r_grid");

  const auto header = split(line);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) {
    index[header[i]] = i;
    if (header[i].rfind(kLqPrefix, 0) == 0) {
      s.meta.qset.push_back(parse_double(header[i].substr(kLqPrefix.size()), header[i]));
    }
  }
  for (const auto& name : series_columns(s.meta.qset)) {
    if (!index.contains(name)) throw SchemaError("missing column '" + name + "'");
  }

  std::size_t row = 0;
  while (std::getline(in, line)) {
    strip_cr(line);
    ++row;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw SchemaError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                        " cells, header has " + std::to_string(header.size()));
    }
    DiagnosticsRecord r;
    auto cell = [&](const std::string& name) { return parse_double(cells[index[name]], name); };
    for (const auto& [name, acc] : leading_columns()) acc(r) = cell(name);
    for (double q : s.meta.qset) r.theta_lq[q] = cell(kLqPrefix + fmt(q));
    for (const auto& [name, acc] : scalar_columns()) acc(r) = cell(name);
    s.records.push_back(std::move(r));
  }
  return s;
}

Series load_series(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw SchemaError("cannot open series " + path.string());
  return read_series(f);
}

}  // namespace abq
