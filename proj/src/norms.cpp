#include "abq/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "abq/errors.hpp"
#include "abq/kernels.hpp"
#include "abq/operators.hpp"
#include "abq/transform.hpp"

namespace abq {

double l2_norm_squared(const SpectralField& f) {
  const Grid& g = f.grid();
  return Grid::area() * kernels::omp::half_spectrum_energy(f.coeffs(), g.nky(), g.ny);
}

double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_squared(f)); }

double lq_norm(const RealField& f, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw InputError("L^q exponent must be finite and >= 1");
  const Grid& g = f.grid();
  const double m = kernels::omp::max_abs(f.data());
  if (m == 0.0) return 0.0;
  if (std::abs(q * std::log(m)) < 300.0) {
    const double sum = kernels::omp::sum_abs_pow(f.data(), static_cast<std::size_t>(g.ny), q);
    return std::pow(g.cell_area() * sum, 1.0 / q);
  }
  std::vector<double> scaled(f.data().begin(), f.data().end());
  for (double& v : scaled) v /= m;
  const double sum = kernels::omp::sum_abs_pow(scaled, static_cast<std::size_t>(g.ny), q);
  return m * std::pow(g.cell_area() * sum, 1.0 / q);
}

double lq_norm(const SpectralField& f, double q) { return lq_norm(inverse(f), q); }

double grid_max_abs(const RealField& f) { return kernels::omp::max_abs(f.data()); }

PointEval evaluate(const SpectralField& f, double x, double y) {
  const Grid& g = f.grid();
  std::vector<Complex> ex(static_cast<std::size_t>(g.nx));
  std::vector<Complex> ey(static_cast<std::size_t>(g.nky()));
  for (int i = 0; i < g.nx; ++i) ex[i] = std::polar(1.0, g.kx(i) * x);
  for (int j = 0; j < g.nky(); ++j) ey[j] = std::polar(1.0, j * y);

  PointEval p;
  for (int i = 0; i < g.nx; ++i) {
    const double kx = g.kx(i);
    for (int j = 0; j < g.nky(); ++j) {
      const Complex c = f.at(i, j);
      if (c == Complex{}) continue;
      const double w = (j == 0 || j == g.ny / 2) ? 1.0 : 2.0;
      const double ky = j;
      const Complex term = w * c * ex[i] * ey[j];
      p.value += term.real();
      // d/dx multiplies by i*kx: Re(i*z) = -Im(z)
      p.fx -= kx * term.imag();
      p.fy -= ky * term.imag();
      p.fxx -= kx * kx * term.real();
      p.fxy -= kx * ky * term.real();
      p.fyy -= ky * ky * term.real();
    }
  }
  return p;
}

namespace {

// Newton ascent on s*f from a collocation point. Returns the refined |f|.
double refine_peak(const SpectralField& f, double x, double y, double start) {
  const Grid& g = f.grid();
  const double max_shift = 2.0 * std::max(g.dx(), g.dy());
  const double x0 = x;
  const double y0 = y;
  double best = start;
  for (int iter = 0; iter < 25; ++iter) {
    const PointEval p = evaluate(f, x, y);
    const double s = p.value >= 0.0 ? 1.0 : -1.0;
    best = std::max(best, std::abs(p.value));
    // maximize s*f: Newton step on the gradient with Hessian s*H
    const double hxx = s * p.fxx, hxy = s * p.fxy, hyy = s * p.fyy;
    const double gx = s * p.fx, gy = s * p.fy;
    const double det = hxx * hyy - hxy * hxy;
    if (!(hxx < 0.0 && det > 0.0)) break;  // not locally concave
    const double dx = -(hyy * gx - hxy * gy) / det;
    const double dy = -(-hxy * gx + hxx * gy) / det;
    x += dx;
    y += dy;
    if (std::hypot(x - x0, y - y0) > max_shift) break;
    if (std::hypot(dx, dy) < 1e-15) {
      best = std::max(best, std::abs(evaluate(f, x, y).value));
      break;
    }
  }
  return best;
}

}  // namespace

double linf_norm(const SpectralField& f) {
  const Grid& g = f.grid();
  const RealField samples = inverse(f);
  const double grid_max = grid_max_abs(samples);
  if (grid_max == 0.0) return 0.0;

  // Candidate peaks: collocation points that are local maxima of |f|.
  struct Candidate {
    double value;
    int i;
    int j;
  };
  std::vector<Candidate> peaks;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double v = std::abs(samples(i, j));
      if (v < 0.5 * grid_max) continue;
      bool is_peak = true;
      for (int di = -1; di <= 1 && is_peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = (i + di + g.nx) % g.nx;
          const int jj = (j + dj + g.ny) % g.ny;
          if (std::abs(samples(ii, jj)) > v) {
            is_peak = false;
            break;
          }
        }
      }
      if (is_peak) peaks.push_back({v, i, j});
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  constexpr std::size_t kMaxCandidates = 8;
  if (peaks.size() > kMaxCandidates) peaks.resize(kMaxCandidates);

  double best = grid_max;
  for (const auto& c : peaks) best = std::max(best, refine_peak(f, g.x(c.i), g.y(c.j), c.value));
  return best;
}

NormSet norms(const SpectralField& f, std::span<const double> qset) {
  for (double q : qset) {
    if (!(q >= 1.0) || !std::isfinite(q)) {
      throw InputError("norm exponents must be finite and >= 1, got " + std::to_string(q));
    }
  }
  NormSet n;
  n.l2 = l2_norm(f);
  n.dx_l2 = l2_norm(derivative(f, Axis::x));
  n.dy_l2 = l2_norm(derivative(f, Axis::y));
  n.h1 = std::sqrt(n.l2 * n.l2 + n.dx_l2 * n.dx_l2 + n.dy_l2 * n.dy_l2);
  if (!qset.empty()) {
    const RealField samples = inverse(f);
    for (double q : qset) n.lq[q] = lq_norm(samples, q);
  }
  n.linf = linf_norm(f);
  return n;
}

double integral_product(std::span<const SpectralField* const> fields) {
  if (fields.size() < 2 || fields.size() > 3) {
    throw InputError("integral_product takes 2 or 3 fields");
  }
  const Grid& g = fields[0]->grid();
  for (const auto* f : fields) {
    if (!(f->grid() == g)) throw InputError("grid mismatch in integral_product");
  }
  // Triple products of modes |k| <= n/2 reach 3n/2 < 2n, so the trapezoidal
  // sum on the doubled grid integrates them exactly.
  const Grid fine(2 * g.nx, 2 * g.ny);
  std::array<RealField, 3> samples;
  for (std::size_t k = 0; k < fields.size(); ++k) samples[k] = inverse_on(*fields[k], fine);
  const auto row = static_cast<std::size_t>(fine.ny);
  const double sum = fields.size() == 2
                         ? kernels::omp::sum_product(samples[0].data(), samples[1].data(), row)
                         : kernels::omp::sum_product(samples[0].data(), samples[1].data(),
                                                     samples[2].data(), row);
  return fine.cell_area() * sum;
}

double integral_product(const SpectralField& a, const SpectralField& b) {
  const std::array<const SpectralField*, 2> f{&a, &b};
  return integral_product(f);
}

double integral_product(const SpectralField& a, const SpectralField& b, const SpectralField& c) {
  const std::array<const SpectralField*, 3> f{&a, &b, &c};
  return integral_product(f);
}

}  // namespace abq
