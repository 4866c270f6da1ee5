#include "abq/operators.hpp"

#include <algorithm>
#include <cmath>

#include "abq/errors.hpp"
#include "abq/kernels.hpp"
#include "abq/transform.hpp"

namespace abq {
namespace {

constexpr Complex kI{0.0, 1.0};

// Wavenumber used by spectral differentiation: the Nyquist mode maps to 0.
double diff_kx(const Grid& g, int i) {
  const int k = g.kx(i);
  return k == g.nx / 2 ? 0.0 : static_cast<double>(k);
}

double diff_ky(const Grid& g, int j) { return j == g.ny / 2 ? 0.0 : static_cast<double>(j); }

}  // namespace

bool has_zero_mean(const SpectralField& f) {
  double scale = 0.0;
  for (const auto& c : f.coeffs()) scale = std::max(scale, std::abs(c));
  return std::abs(f.mean()) <= 1e-12 * std::max(scale, 1.0);
}

SpectralField derivative(const SpectralField& f, Axis axis) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const double k = axis == Axis::x ? diff_kx(g, i) : diff_ky(g, j);
      out.at(i, j) = kI * k * f.at(i, j);
    }
  }
  return out;
}

SpectralField second_derivative(const SpectralField& f, Axis axis) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const double k = axis == Axis::x ? diff_kx(g, i) : diff_ky(g, j);
      out.at(i, j) = -(k * k) * f.at(i, j);
    }
  }
  return out;
}

SpectralField inverse_laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  if (!has_zero_mean(f)) throw InputError("inverse Laplacian needs a zero-mean field");
  SpectralField out(g);
  for (int i = 0; i < g.nx; ++i) {
    const double kx = g.kx(i);
    for (int j = 0; j < g.nky(); ++j) {
      if (i == 0 && j == 0) continue;
      const double k2 = kx * kx + static_cast<double>(j) * j;
      out.at(i, j) = -f.at(i, j) / k2;
    }
  }
  return out;
}

Velocity velocity_from_vorticity(const SpectralField& omega) {
  const Grid& g = omega.grid();
  if (!has_zero_mean(omega)) {
    throw InputError("vorticity has nonzero mean; no periodic streamfunction exists");
  }
  Velocity u{SpectralField(g), SpectralField(g)};
  for (int i = 0; i < g.nx; ++i) {
    const double kx = g.kx(i);
    if (i == g.nx / 2) continue;  // Nyquist rows carry no velocity
    for (int j = 0; j < g.ny / 2; ++j) {
      if (i == 0 && j == 0) continue;
      const double ky = j;
      const double k2 = kx * kx + ky * ky;
      const Complex s = omega.at(i, j) / k2;
      u.u1.at(i, j) = kI * ky * s;
      u.u2.at(i, j) = -kI * kx * s;
    }
  }
  return u;
}

SpectralField curl(const Velocity& u) {
  return derivative(u.u2, Axis::x) - derivative(u.u1, Axis::y);
}

SpectralField divergence(const Velocity& u) {
  return derivative(u.u1, Axis::x) + derivative(u.u2, Axis::y);
}

int dealias_cutoff(int n) { return n / 3; }

void dealias_in_place(SpectralField& f) {
  const Grid& g = f.grid();
  const int cx = dealias_cutoff(g.nx);
  const int cy = dealias_cutoff(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    const bool drop_row = std::abs(g.kx(i)) > cx;
    for (int j = 0; j < g.nky(); ++j) {
      if (drop_row || j > cy) f.at(i, j) = Complex{};
    }
  }
}

SpectralField dealias(SpectralField f) {
  dealias_in_place(f);
  return f;
}

bool is_dealiased(const SpectralField& f) {
  const Grid& g = f.grid();
  const int cx = dealias_cutoff(g.nx);
  const int cy = dealias_cutoff(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      if ((std::abs(g.kx(i)) > cx || j > cy) && f.at(i, j) != Complex{}) return false;
    }
  }
  return true;
}

SpectralField product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw InputError("grid mismatch in product");
  const RealField pa = inverse(a);
  const RealField pb = inverse(b);
  RealField out(a.grid());
  kernels::omp::multiply(pa.data(), pb.data(), out.data());
  return forward(out);
}

}  // namespace abq
