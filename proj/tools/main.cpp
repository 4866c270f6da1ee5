#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "abq/commands.hpp"
#include "abq/errors.hpp"
#include "abq/parallel.hpp"

namespace {

template <class T>
std::optional<T> opt(const CLI::Option* o, const T& v) {
  return o->count() > 0 ? std::optional<T>(v) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = abq::cli;
  try {
    abq::parallel::configure_from_env();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kConfigError;
  }

  CLI::App app{"Boussinesq solver with a priori estimate monitors and an inequality lab", "abq"};
  app.require_subcommand(1);

  std::string config, out_dir, series, check = "all", test, study;
  int levels = 0;
  std::vector<double> eps;

  auto* sim = app.add_subcommand("simulate", "run a configuration and write series, snapshots and a summary");
  sim->add_option("--config", config, "run configuration (JSON)")->required();
  auto* sim_out = sim->add_option("--out", out_dir, "output directory (overrides out_dir)");

  auto* mon = app.add_subcommand("monitor", "evaluate estimate checks on a series file");
  mon->add_option("--series", series, "series CSV")->required();
  mon->add_option("--check", check, "check name or 'all'");

  cli::IneqlabOptions lab;
  int samples = 0;
  double K = 0, A0 = 0, alpha = 0, T = 0;
  std::string lab_out;
  auto* ineq = app.add_subcommand("ineqlab", "randomized checks of the functional inequalities");
  ineq->add_option("study", study, "holder | embedding | gronwall")->required();
  ineq->add_option("--seed", lab.seed, "first seed");
  auto* o_samples = ineq->add_option("--samples", samples, "number of seeds");
  ineq->add_option("--q", lab.q, "holder exponents, e.g. 2,3,4")->delimiter(',');
  ineq->add_option("--p", lab.p, "embedding exponents, e.g. 4,4")->delimiter(',');
  ineq->add_option("--lambda", lab.lambda, "embedding log powers, e.g. 0.5,1")->delimiter(',');
  auto* o_k = ineq->add_option("--K", K, "gronwall constant K >= 1");
  auto* o_a0 = ineq->add_option("--A0", A0, "gronwall A(0) >= e");
  auto* o_alpha = ineq->add_option("--alpha", alpha, "gronwall exponent, B = A^alpha");
  auto* o_t = ineq->add_option("--T", T, "gronwall horizon");
  ineq->add_option("--family", lab.family, "gronwall family: proportional | saturating");
  auto* o_lab_out = ineq->add_option("--out", lab_out, "report directory");

  auto* conv = app.add_subcommand("convergence", "spatial and temporal convergence study");
  conv->add_option("--test", test, "diffusion | taylor-vortex")->required();
  conv->add_option("--levels", levels, "number of refinement levels (>= 3)")->required();

  auto* tw = app.add_subcommand("twin", "perturbed twin runs and the stability estimate");
  tw->add_option("--config", config, "run configuration (JSON)")->required();
  tw->add_option("--eps", eps, "perturbation sizes, e.g. 1e-3,1e-4")->required()->delimiter(',');
  auto* tw_out = tw->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kConfigError;
  }

  try {
    if (*sim) return cli::simulate(config, opt<std::filesystem::path>(sim_out, out_dir), std::cerr);
    if (*mon) return cli::monitor(series, check, std::cout);
    if (*conv) return cli::convergence(test, levels, std::cout);
    if (*tw) return cli::twin(config, eps, opt<std::filesystem::path>(tw_out, out_dir), std::cout);
    if (*ineq) {
      lab.samples = opt(o_samples, samples);
      lab.K = opt(o_k, K);
      lab.A0 = opt(o_a0, A0);
      lab.alpha = opt(o_alpha, alpha);
      lab.T = opt(o_t, T);
      lab.out_dir = opt<std::filesystem::path>(o_lab_out, lab_out);
      return cli::ineqlab(study, lab, std::cout);
    }
  } catch (const abq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const abq::InputError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::kConfigError;
  }
  return cli::kConfigError;
}
