#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "abq/commands.hpp"
#include "abq/config.hpp"
#include "abq/errors.hpp"
#include "abq/initial.hpp"
#include "abq/series.hpp"
#include "abq/snapshot.hpp"
#include "abq/transform.hpp"

using namespace abq;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("abq_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

fs::path write_text(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const char* kDiffusion = R"({
  "solver": {"nx": 16, "ny": 16, "nu": 1.0, "kappa": 1.0, "dt": 0.05, "t_end": 1.0},
  "ic": {"name": "single-mode", "params": {"theta_amplitude": 1.0}},
  "monitor": {"output_every": 0.1, "snapshot_every": 0.5}
})";

const char* kZero = R"({
  "solver": {"nx": 16, "ny": 16, "dt": 0.05, "t_end": 0.5},
  "ic": {"name": "single-mode", "params": {"theta_amplitude": 0.0}},
  "monitor": {"output_every": 0.05}
})";

const char* kRandom = R"({
  "solver": {"nx": 32, "ny": 32, "nu": 0.1, "kappa": 0.1, "dt": "auto", "t_end": 0.3},
  "ic": {"name": "random-bandlimited", "params": {"kmax": 4}, "seed": 7},
  "monitor": {"output_every": 0.05}
})";

}  // namespace

TEST(Config, ParsesSections) {
  const RunConfig rc = parse_run_config(kRandom);
  EXPECT_EQ(rc.solver.grid.nx, 32);
  EXPECT_FALSE(rc.solver.dt.has_value());
  EXPECT_EQ(rc.ic.seed.value(), 7u);
  EXPECT_DOUBLE_EQ(rc.ic.params.at("kmax"), 4.0);
  EXPECT_DOUBLE_EQ(rc.monitor.nu, 0.1);
}

TEST(Config, UnknownKeyRejectedByName) {
  try {
    parse_run_config(R"({"solver": {"nx": 8, "ny": 8, "viscosity": 1}, "ic": {"name": "single-mode"}})");
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("viscosity"), std::string::npos);
  }
  EXPECT_THROW(parse_run_config(R"({"solver": {"nx": 8, "ny": 8}, "ic": {"name": "single-mode"}, "extra": 1})"),
               ConfigError);
  EXPECT_THROW(parse_run_config(R"({"solver": {"nx": 8, "ny": 8}, "ic": {"name": "single-mode", "params": {"k": 1}}})"),
               ConfigError);
}

TEST(Config, RandomIcNeedsSeed) {
  EXPECT_THROW(parse_run_config(R"({"solver": {"nx": 8, "ny": 8}, "ic": {"name": "random-bandlimited"}})"),
               ConfigError);
  EXPECT_THROW(parse_run_config(R"({"solver": {"nx": 8, "ny": 8}, "ic": {"name": "rough"}})"), ConfigError);
}

TEST(Config, MalformedInput) {
  EXPECT_THROW(parse_run_config("{"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"solver": {"ny": 8}, "ic": {"name": "single-mode"}})"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"solver": {"nx": 8, "ny": 8, "dt": "fast"}, "ic": {"name": "single-mode"}})"),
               ConfigError);
  EXPECT_THROW(parse_run_config(R"({"solver": {"nx": 8, "ny": 8}, "ic": {"name": "vortex-sheet"}})"), ConfigError);
}

TEST(Initial, SeededIcIsReproducible) {
  const Grid g(32, 32);
  const IcSpec spec{"random-bandlimited", {}, 3};
  const State a = make_initial_state(g, spec), b = make_initial_state(g, spec);
  EXPECT_EQ(std::memcmp(a.theta.coeffs().data(), b.theta.coeffs().data(), a.theta.coeffs().size_bytes()), 0);
  const State c = make_initial_state(g, {"random-bandlimited", {}, 4});
  EXPECT_NE(std::memcmp(a.theta.coeffs().data(), c.theta.coeffs().data(), a.theta.coeffs().size_bytes()), 0);
}

TEST(Snapshot, RoundTripIsBitExact) {
  const Grid g(24, 16);
  const State s = make_initial_state(g, {"random-bandlimited", {{"kmax", 5}}, 11});
  Snapshot snap = snapshot_of(s);
  snap.time = 0.1 + 0.2;
  const Snapshot back = decode_snapshot(encode_snapshot(snap));
  EXPECT_EQ(back.nx, 24);
  EXPECT_EQ(back.ny, 16);
  EXPECT_EQ(back.time, snap.time);
  ASSERT_EQ(back.names, snap.names);
  for (std::size_t f = 0; f < snap.fields.size(); ++f) {
    EXPECT_EQ(std::memcmp(back.fields[f].data().data(), snap.fields[f].data().data(), snap.fields[f].data().size_bytes()),
              0);
  }

  TempDir dir;
  write_snapshot(dir / "s.snap", snap);
  EXPECT_EQ(encode_snapshot(read_snapshot(dir / "s.snap")), encode_snapshot(snap));
  EXPECT_EQ(read_text(dir / "s.snap").size(), encode_snapshot(snap).size());
  EXPECT_FALSE(fs::exists(dir / "s.snap.tmp"));
}

TEST(Snapshot, HeaderDescribesLayout) {
  const std::string bytes = encode_snapshot(snapshot_of(make_initial_state(Grid(8, 8), {"single-mode", {}, {}})));
  const std::string header = bytes.substr(0, bytes.find('\n'));
  for (const char* key : {"\"dtype\":\"f64\"", "\"endianness\":\"little\"", "\"layout\":\"row-major, x-major\"",
                          "\"fields\":[\"omega\",\"theta\"]"}) {
    EXPECT_NE(header.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(bytes.size() - header.size() - 1, 8u * 8 * 8 * 2);
}

TEST(Snapshot, BadPayloadLengthRejected) {
  std::string bytes = encode_snapshot(snapshot_of(make_initial_state(Grid(8, 8), {"single-mode", {}, {}})));
  EXPECT_THROW(decode_snapshot(bytes.substr(0, bytes.size() - 8)), SchemaError);
  EXPECT_THROW(decode_snapshot(bytes + "x"), SchemaError);
  EXPECT_THROW(decode_snapshot("not a snapshot"), SchemaError);
}

TEST(Snapshot, StateRoundTrip) {
  const Grid g(32, 32);
  const State s = make_initial_state(g, {"random-bandlimited", {}, 5});
  const State back = state_from(decode_snapshot(encode_snapshot(snapshot_of(s))));
  for (std::size_t k = 0; k < s.theta.coeffs().size(); ++k) {
    EXPECT_NEAR(std::abs(back.theta.coeffs()[k] - s.theta.coeffs()[k]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(back.omega.coeffs()[k] - s.omega.coeffs()[k]), 0.0, 1e-12);
  }
}

TEST(Simulate, DiffusionMatchesExactDecay) {
  TempDir dir;
  std::ostringstream log;
  const fs::path out = dir / "run";
  ASSERT_EQ(cli::simulate(write_text(dir / "c.json", kDiffusion), out, log), cli::kOk) << log.str();
  const Series s = load_series(out / "series.csv");
  ASSERT_EQ(s.records.size(), 11u);
  const double a0 = s.records.front().theta_l2;
  for (const auto& r : s.records) EXPECT_NEAR(r.theta_l2 / a0, std::exp(-r.t), 1e-10) << r.t;
  EXPECT_TRUE(fs::exists(out / "summary.json"));
  EXPECT_TRUE(fs::exists(out / "snapshots" / "t00000.00000.snap"));
  EXPECT_TRUE(fs::exists(out / "snapshots" / "t00000.50000.snap"));
  EXPECT_TRUE(fs::exists(out / "snapshots" / "t00001.00000.snap"));
  EXPECT_NE(read_text(out / "summary.json").find("\"completed\""), std::string::npos);
}

TEST(Simulate, ConfigErrorExitCode) {
  TempDir dir;
  std::ostringstream log;
  EXPECT_EQ(cli::simulate(write_text(dir / "c.json", R"({"solver": {"nx": 8}})"), dir / "o", log), cli::kConfigError);
  EXPECT_EQ(cli::simulate(dir / "missing.json", dir / "o", log), cli::kConfigError);
}

TEST(Simulate, OversizedStepHaltsWithPartialOutput) {
  TempDir dir;
  std::ostringstream log;
  const char* cfg = R"({
    "solver": {"nx": 32, "ny": 32, "dt": 0.5, "t_end": 5.0},
    "ic": {"name": "random-bandlimited", "seed": 9},
    "monitor": {"output_every": 0.5}
  })";
  EXPECT_EQ(cli::simulate(write_text(dir / "c.json", cfg), dir / "o", log), cli::kHalt) << log.str();
  EXPECT_TRUE(fs::exists(dir / "o" / "last_valid.snap"));
  EXPECT_GE(load_series(dir / "o" / "series.csv").records.size(), 1u);
  EXPECT_NE(log.str().find("halted"), std::string::npos);
}

TEST(Simulate, IdenticalConfigGivesIdenticalCsv) {
  TempDir dir;
  std::ostringstream log;
  const fs::path cfg = write_text(dir / "c.json", kRandom);
  ASSERT_EQ(cli::simulate(cfg, dir / "a", log), cli::kOk);
  ASSERT_EQ(cli::simulate(cfg, dir / "b", log), cli::kOk);
  const std::string a = read_text(dir / "a" / "series.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read_text(dir / "b" / "series.csv"));
}

TEST(Monitor, ZeroIcPassesAll) {
  TempDir dir;
  std::ostringstream log, out;
  ASSERT_EQ(cli::simulate(write_text(dir / "c.json", kZero), dir / "o", log), cli::kOk);
  EXPECT_EQ(cli::monitor(dir / "o" / "series.csv", "all", out), cli::kOk) << out.str();
  for (const auto& name : check_names()) EXPECT_NE(out.str().find(name), std::string::npos) << name;
}

TEST(Monitor, InflatedSupNormFails) {
  TempDir dir;
  std::ostringstream log, out;
  ASSERT_EQ(cli::simulate(write_text(dir / "c.json", kRandom), dir / "o", log), cli::kOk);
  Series s = load_series(dir / "o" / "series.csv");
  s.records[3].theta_linf = 1.01 * s.records[0].theta_linf;
  save_series(dir / "inflated.csv", s);
  EXPECT_EQ(cli::monitor(dir / "inflated.csv", "theta_max_principle", out), cli::kCheckFailure);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
  std::ostringstream other;
  EXPECT_EQ(cli::monitor(dir / "inflated.csv", "incompressibility", other), cli::kOk);
}

TEST(Monitor, SchemaErrorsNameTheProblem) {
  TempDir dir;
  std::ostringstream log;
  ASSERT_EQ(cli::simulate(write_text(dir / "c.json", kZero), dir / "o", log), cli::kOk);
  std::string text = read_text(dir / "o" / "series.csv");

  std::string dropped = text;
  const auto pos = dropped.find(",theta_linf");
  ASSERT_NE(pos, std::string::npos);
  dropped.replace(pos, std::strlen(",theta_linf"), ",theta_sup");
  std::ostringstream out;
  EXPECT_EQ(cli::monitor(write_text(dir / "bad.csv", dropped), "all", out), cli::kConfigError);
  EXPECT_NE(out.str().find("theta_linf"), std::string::npos) << out.str();

  std::string old = text;
  old.replace(old.find("version=1"), 9, "version=0");
  std::ostringstream out2;
  EXPECT_EQ(cli::monitor(write_text(dir / "old.csv", old), "all", out2), cli::kConfigError);

  std::ostringstream out3;
  EXPECT_EQ(cli::monitor(dir / "o" / "series.csv", "no_such_check", out3), cli::kConfigError);
}

TEST(Convergence, TooFewLevelsIsUsageError) {
  std::ostringstream out;
  EXPECT_EQ(cli::convergence("diffusion", 1, out), cli::kConfigError);
  EXPECT_EQ(cli::convergence("burgers", 3, out), cli::kConfigError);
}

TEST(Convergence, DiffusionAtRoundoff) {
  std::ostringstream out;
  EXPECT_EQ(cli::convergence("diffusion", 3, out), cli::kOk) << out.str();
  const auto r = cli::convergence_study("diffusion", 3);
  for (double e : r.spatial_errors) EXPECT_LE(e, 1e-13);
}

TEST(Twin, ZeroPerturbationIsSkipped) {
  TempDir dir;
  std::ostringstream out;
  EXPECT_EQ(cli::twin(write_text(dir / "c.json", kDiffusion), {0.0}, dir / "o", out), cli::kOk);
  EXPECT_NE(out.str().find("skipped"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "o" / "twin.json"));
}

TEST(Twin, DiffusionDifferenceDecaysLikeExpMinus2t) {
  const RunConfig rc = parse_run_config(kZero);
  const cli::TwinResult r = cli::twin_study(rc, {1e-3, 1e-5});
  for (const auto& [eps, samples] : r.samples) {
    ASSERT_FALSE(samples.empty());
    EXPECT_NEAR(samples.front().d, eps * eps, 1e-12 * eps * eps);
    for (const auto& x : samples) EXPECT_NEAR(x.d / samples.front().d, std::exp(-2.0 * x.t), 1e-8) << x.t;
  }
}

TEST(Twin, BadInputs) {
  TempDir dir;
  std::ostringstream out;
  const fs::path cfg = write_text(dir / "c.json", kDiffusion);
  EXPECT_EQ(cli::twin(cfg, {}, dir / "o", out), cli::kConfigError);
  EXPECT_EQ(cli::twin(cfg, {-1e-3}, dir / "o", out), cli::kConfigError);
}

TEST(Ineqlab, EmbeddingRejectsCriticalExponents) {
  TempDir dir;
  std::ostringstream out;
  cli::IneqlabOptions o;
  o.p = {2, 2};
  o.out_dir = dir.path();
  EXPECT_EQ(cli::ineqlab("embedding", o, out), cli::kConfigError);
  EXPECT_NE(out.str().find("sum_i 1/p_i < 1"), std::string::npos);
}

TEST(Ineqlab, GronwallSingleCase) {
  TempDir dir;
  std::ostringstream out;
  cli::IneqlabOptions o;
  o.K = 1.0;
  o.A0 = std::exp(std::exp(1.0));
  o.alpha = 1.0;
  o.T = 2.0;
  o.out_dir = dir.path();
  EXPECT_EQ(cli::ineqlab("gronwall", o, out), cli::kOk) << out.str();
  const std::string report = read_text(dir / "ineqlab_gronwall.json");
  EXPECT_NE(report.find("\"max_ratio\""), std::string::npos);
  EXPECT_NE(report.find("\"levels\""), std::string::npos);
}

TEST(Ineqlab, HolderHundredSeeds) {
  TempDir dir;
  std::ostringstream out;
  cli::IneqlabOptions o;
  o.samples = 100;
  o.q = {2};
  o.out_dir = dir.path();
  EXPECT_EQ(cli::ineqlab("holder", o, out), cli::kOk) << out.str();
  EXPECT_NE(read_text(dir / "ineqlab_holder.json").find("\"C_hat\""), std::string::npos);
}

TEST(Ineqlab, UnknownStudy) {
  TempDir dir;
  std::ostringstream out;
  cli::IneqlabOptions o;
  o.out_dir = dir.path();
  EXPECT_EQ(cli::ineqlab("young", o, out), cli::kConfigError);
  o.q = {1.5};
  EXPECT_EQ(cli::ineqlab("holder", o, out), cli::kConfigError);
}
