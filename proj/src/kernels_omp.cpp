#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "abq/kernels.hpp"
#include "abq/parallel.hpp"

namespace abq::kernels::omp {
namespace {

double pow_abs(double v, double q) {
  const double a = std::abs(v);
  if (q == 2.0) return a * a;
  if (q == 4.0) {
    const double s = a * a;
    return s * s;
  }
  return std::pow(a, q);
}

// Row partials are written to their own slot and summed serially in row
// order, which keeps the result independent of the thread count.
template <class RowSum>
double row_reduce(std::size_t n, std::size_t row_length, RowSum&& row_sum) {
  if (row_length == 0) return 0.0;
  const auto rows = static_cast<std::int64_t>(n / row_length);
  std::vector<double> partial(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(static) num_threads(parallel::max_threads())
  for (std::int64_t r = 0; r < rows; ++r) {
    const auto begin = static_cast<std::size_t>(r) * row_length;
    partial[static_cast<std::size_t>(r)] = row_sum(begin, begin + row_length);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) num_threads(parallel::max_threads())
  for (std::int64_t k = 0; k < n; ++k) out[k] = a[k] * b[k];
}

void advect(std::span<const double> u1, std::span<const double> u2,
            std::span<const double> fx, std::span<const double> fy, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) num_threads(parallel::max_threads())
  for (std::int64_t k = 0; k < n; ++k) out[k] = -(u1[k] * fx[k] + u2[k] * fy[k]);
}

double sum_abs_pow(std::span<const double> f, std::size_t row_length, double q) {
  return row_reduce(f.size(), row_length, [&](std::size_t b, std::size_t e) {
    double row = 0.0;
    for (std::size_t k = b; k < e; ++k) row += pow_abs(f[k], q);
    return row;
  });
}

double sum_product(std::span<const double> a, std::span<const double> b, std::size_t row_length) {
  return row_reduce(a.size(), row_length, [&](std::size_t s, std::size_t e) {
    double row = 0.0;
    for (std::size_t k = s; k < e; ++k) row += a[k] * b[k];
    return row;
  });
}

double sum_product(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c, std::size_t row_length) {
  return row_reduce(a.size(), row_length, [&](std::size_t s, std::size_t e) {
    double row = 0.0;
    for (std::size_t k = s; k < e; ++k) row += a[k] * b[k] * c[k];
    return row;
  });
}

double sum_abs_product(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::size_t row_length) {
  return row_reduce(a.size(), row_length, [&](std::size_t s, std::size_t e) {
    double row = 0.0;
    for (std::size_t k = s; k < e; ++k) row += std::abs(a[k] * b[k] * c[k]);
    return row;
  });
}

double max_abs(std::span<const double> f) {
  const auto n = static_cast<std::int64_t>(f.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) num_threads(parallel::max_threads())
  for (std::int64_t k = 0; k < n; ++k) m = std::max(m, std::abs(f[k]));
  return m;
}

void scale_modes(std::span<Complex> c, std::span<const double> factor) {
  const auto n = static_cast<std::int64_t>(c.size());
#pragma omp parallel for schedule(static) num_threads(parallel::max_threads())
  for (std::int64_t k = 0; k < n; ++k) c[k] *= factor[k];
}

void combine(double a, std::span<const Complex> x, double b, std::span<const Complex> y,
             std::span<Complex> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) num_threads(parallel::max_threads())
  for (std::int64_t k = 0; k < n; ++k) out[k] = a * x[k] + b * y[k];
}

double half_spectrum_energy(std::span<const Complex> c, int nky, int ny) {
  return row_reduce(c.size(), static_cast<std::size_t>(nky), [&](std::size_t s, std::size_t e) {
    double row = 0.0;
    for (std::size_t k = s; k < e; ++k) {
      const std::size_t j = k - s;
      const double w = (j == 0 || static_cast<int>(j) == ny / 2) ? 1.0 : 2.0;
      row += w * std::norm(c[k]);
    }
    return row;
  });
}

}  // namespace abq::kernels::omp
