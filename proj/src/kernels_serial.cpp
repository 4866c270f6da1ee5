#include <algorithm>
#include <cmath>

#include "abq/kernels.hpp"

namespace abq::kernels::serial {
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

std::size_t rows_of(std::size_t n, std::size_t row_length) {
  return row_length == 0 ? 0 : n / row_length;
}

}  // namespace

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a[n] * b[n];
}

void advect(std::span<const double> u1, std::span<const double> u2,
            std::span<const double> fx, std::span<const double> fy, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = -(u1[n] * fx[n] + u2[n] * fy[n]);
}

double sum_abs_pow(std::span<const double> f, std::size_t row_length, double q) {
  double total = 0.0;
  for (std::size_t r = 0; r < rows_of(f.size(), row_length); ++r) {
    double row = 0.0;
    for (std::size_t n = r * row_length; n < (r + 1) * row_length; ++n) row += pow_abs(f[n], q);
    total += row;
  }
  return total;
}

double sum_product(std::span<const double> a, std::span<const double> b, std::size_t row_length) {
  double total = 0.0;
  for (std::size_t r = 0; r < rows_of(a.size(), row_length); ++r) {
    double row = 0.0;
    for (std::size_t n = r * row_length; n < (r + 1) * row_length; ++n) row += a[n] * b[n];
    total += row;
  }
  return total;
}

double sum_product(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c, std::size_t row_length) {
  double total = 0.0;
  for (std::size_t r = 0; r < rows_of(a.size(), row_length); ++r) {
    double row = 0.0;
    for (std::size_t n = r * row_length; n < (r + 1) * row_length; ++n) row += a[n] * b[n] * c[n];
    total += row;
  }
  return total;
}

double sum_abs_product(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::size_t row_length) {
  double total = 0.0;
  for (std::size_t r = 0; r < rows_of(a.size(), row_length); ++r) {
    double row = 0.0;
    for (std::size_t n = r * row_length; n < (r + 1) * row_length; ++n) {
      row += std::abs(a[n] * b[n] * c[n]);
    }
    total += row;
  }
  return total;
}

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

void scale_modes(std::span<Complex> c, std::span<const double> factor) {
  for (std::size_t n = 0; n < c.size(); ++n) c[n] *= factor[n];
}

void combine(double a, std::span<const Complex> x, double b, std::span<const Complex> y,
             std::span<Complex> out) {
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a * x[n] + b * y[n];
}

double half_spectrum_energy(std::span<const Complex> c, int nky, int ny) {
  const auto len = static_cast<std::size_t>(nky);
  double total = 0.0;
  for (std::size_t r = 0; r < rows_of(c.size(), len); ++r) {
    double row = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      const double w = (j == 0 || static_cast<int>(j) == ny / 2) ? 1.0 : 2.0;
      row += w * std::norm(c[r * len + j]);
    }
    total += row;
  }
  return total;
}

}  // namespace abq::kernels::serial
