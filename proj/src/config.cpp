#include "abq/config.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "abq/errors.hpp"

namespace abq {
namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) throw ConfigError("'" + key + "' must be a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, key));
  return out;
}

void parse_solver(const json& j, SolverConfig& c) {
  only_keys(j, "solver", {"nx", "ny", "nu", "kappa", "dt", "t_end", "cfl_safety", "dealias"});
  if (!j.contains("nx") || !j.contains("ny")) throw ConfigError("solver needs 'nx' and 'ny'");
  try {
    c.grid = Grid(integer(j["nx"], "nx"), integer(j["ny"], "ny"));
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("nu")) c.nu = number(j["nu"], "nu");
  if (j.contains("kappa")) c.kappa = number(j["kappa"], "kappa");
  if (j.contains("dt")) {
    const auto& dt = j["dt"];
    if (dt.is_string()) {
      if (dt.get<std::string>() != "auto") throw ConfigError("'dt' must be a number or \"auto\"");
      c.dt.reset();
    } else {
      c.dt = number(dt, "dt");
    }
  }
  if (j.contains("t_end")) c.t_end = number(j["t_end"], "t_end");
  if (j.contains("cfl_safety")) c.cfl_safety = number(j["cfl_safety"], "cfl_safety");
  if (j.contains("dealias")) {
    if (!j["dealias"].is_boolean()) throw ConfigError("'dealias' must be true or false");
    c.dealias = j["dealias"].get<bool>();
  }
}

void parse_ic(const json& j, IcSpec& ic) {
  only_keys(j, "ic", {"name", "params", "seed"});
  if (!j.contains("name") || !j["name"].is_string()) throw ConfigError("ic needs a string 'name'");
  ic.name = j["name"].get<std::string>();
  const auto& allowed = ic_parameters(ic.name);
  if (j.contains("params")) {
    only_keys(j["params"], "ic.params", {allowed.begin(), allowed.end()});
    for (const auto& [key, value] : j["params"].items()) ic.params[key] = number(value, key);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
    ic.seed = j["seed"].get<std::uint64_t>();
  }
  if (ic_needs_seed(ic.name) && !ic.seed) {
    throw ConfigError("initial condition '" + ic.name + "' requires 'seed'");
  }
}

void parse_monitor(const json& j, RunConfig& rc) {
  only_keys(j, "monitor", {"qset", "r_grid", "output_every", "snapshot_every"});
  if (j.contains("qset")) {
    rc.monitor.qset = numbers(j["qset"], "qset");
    for (double q : rc.monitor.qset) {
      if (!(q >= 1.0) || !std::isfinite(q)) throw ConfigError("qset entries must be finite and >= 1");
    }
  }
  if (j.contains("r_grid")) {
    rc.monitor.r_grid = numbers(j["r_grid"], "r_grid");
    for (double r : rc.monitor.r_grid) {
      if (!(r >= 2.0)) throw ConfigError("r_grid entries must be >= 2");
    }
  }
  if (j.contains("output_every")) rc.solver.output_every = number(j["output_every"], "output_every");
  if (j.contains("snapshot_every")) {
    rc.snapshot_every = number(j["snapshot_every"], "snapshot_every");
    if (!(*rc.snapshot_every > 0.0)) throw ConfigError("'snapshot_every' must be positive");
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(j, "config", {"solver", "ic", "monitor", "out_dir"});
  if (!j.contains("solver")) throw ConfigError("config needs a 'solver' section");
  if (!j.contains("ic")) throw ConfigError("config needs an 'ic' section");

  RunConfig rc;
  parse_solver(j["solver"], rc.solver);
  parse_ic(j["ic"], rc.ic);
  if (j.contains("monitor")) parse_monitor(j["monitor"], rc);
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) throw ConfigError("'out_dir' must be a string");
    rc.out_dir = j["out_dir"].get<std::string>();
  }
  try {
    rc.solver.validate();
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  rc.monitor.nu = rc.solver.nu;
  rc.monitor.kappa = rc.solver.kappa;
  rc.monitor.dealias = rc.solver.dealias;
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace abq
