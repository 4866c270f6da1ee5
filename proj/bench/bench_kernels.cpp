#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "abq/initial.hpp"
#include "abq/kernels.hpp"
#include "abq/parallel.hpp"
#include "abq/timestepper.hpp"

namespace k = abq::kernels;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

std::vector<k::Complex> complex_noise(std::size_t n, std::uint64_t seed) {
  const auto re = noise(n, seed), im = noise(n, seed + 1);
  std::vector<k::Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

template <auto Fn>
void advect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u1 = noise(n * n, 1), u2 = noise(n * n, 2), fx = noise(n * n, 3), fy = noise(n * n, 4);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    Fn(u1, u2, fx, fy, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * 5 * n * n * sizeof(double)));
}

template <auto Fn>
void lq_sum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = noise(n * n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f, n, 8.0));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n * n * sizeof(double)));
}

template <auto Fn>
void triple_product(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise(n * n, 6), b = noise(n * n, 7), c = noise(n * n, 8);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b, c, n));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * 3 * n * n * sizeof(double)));
}

template <auto Fn>
void combine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = complex_noise(n * (n / 2 + 1), 9), y = complex_noise(n * (n / 2 + 1), 11);
  std::vector<k::Complex> out(x.size());
  for (auto _ : state) {
    Fn(0.75, x, 0.25, y, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * 3 * x.size() * sizeof(k::Complex)));
}

template <auto Fn>
void energy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = complex_noise(static_cast<std::size_t>(n) * (n / 2 + 1), 13);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(c, n / 2 + 1, n));
}

void nonlinear_rhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const abq::State s = abq::make_initial_state(abq::Grid(n, n), {"random-bandlimited", {}, 1});
  for (auto _ : state) benchmark::DoNotOptimize(abq::nonlinear_rhs(s));
  state.counters["threads"] = abq::parallel::max_threads();
}

}  // namespace

BENCHMARK(advect<k::serial::advect>)->Name("advect/serial")->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(advect<k::omp::advect>)->Name("advect/omp")->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(lq_sum<k::serial::sum_abs_pow>)->Name("sum_abs_pow/serial")->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(lq_sum<k::omp::sum_abs_pow>)->Name("sum_abs_pow/omp")->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(triple_product<static_cast<double (*)(std::span<const double>, std::span<const double>, std::span<const double>,
                                                std::size_t)>(k::serial::sum_abs_product)>)
    ->Name("sum_abs_product/serial")
    ->Arg(128)
    ->Arg(512);
BENCHMARK(triple_product<static_cast<double (*)(std::span<const double>, std::span<const double>, std::span<const double>,
                                                std::size_t)>(k::omp::sum_abs_product)>)
    ->Name("sum_abs_product/omp")
    ->Arg(128)
    ->Arg(512);
BENCHMARK(combine<k::serial::combine>)->Name("combine/serial")->Arg(256)->Arg(512);
BENCHMARK(combine<k::omp::combine>)->Name("combine/omp")->Arg(256)->Arg(512);
BENCHMARK(energy<k::serial::half_spectrum_energy>)->Name("half_spectrum_energy/serial")->Arg(256)->Arg(512);
BENCHMARK(energy<k::omp::half_spectrum_energy>)->Name("half_spectrum_energy/omp")->Arg(256)->Arg(512);
BENCHMARK(nonlinear_rhs)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  abq::parallel::configure_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
