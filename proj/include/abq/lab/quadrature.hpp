#pragma once

#include <span>
#include <vector>

#include "abq/lab/test_function.hpp"

namespace abq::lab {

/// Uniform grid on [-lx, lx] x [-ly, ly] with nx + 1 by ny + 1 points.
struct QuadBox {
  double lx = 1.0;
  double ly = 1.0;
  int nx = 2;
  int ny = 2;

  [[nodiscard]] double hx() const { return 2.0 * lx / nx; }
  [[nodiscard]] double hy() const { return 2.0 * ly / ny; }
  [[nodiscard]] double x(int i) const { return -lx + i * hx(); }
  [[nodiscard]] double y(int j) const { return -ly + j * hy(); }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(nx + 1) * (ny + 1); }
};

/// Box covering every function's truncation box, with `per_scale` points per
/// smallest length scale among them.
QuadBox box_for(std::span<const TestFunction* const> fs, double per_scale);
QuadBox box_for(const TestFunction& f, double per_scale);

/// Values and first derivatives at the box points, index i * (ny + 1) + j.
struct Samples {
  std::vector<double> f;
  std::vector<double> fx;
  std::vector<double> fy;
};
Samples sample(const TestFunction& f, const QuadBox& box);

/// Trapezoidal rule over the box.
double integrate(const QuadBox& box, std::span<const double> v);
/// (int |v|^p)^(1/p), overflow-safe.
double lp_norm(const QuadBox& box, std::span<const double> v, double p);
/// sup |f|: the largest grid samples refined by Newton steps on the analytic Hessian.
double sup_norm(const TestFunction& f, const QuadBox& box, std::span<const double> values);

}  // namespace abq::lab
