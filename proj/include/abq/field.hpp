#pragma once

#include <complex>
#include <span>
#include <vector>

#include "abq/grid.hpp"

namespace abq {

using Complex = std::complex<double>;

/// Real samples of a scalar field on the collocation grid.
class RealField {
 public:
  RealField() = default;
  explicit RealField(const Grid& grid);
  RealField(const Grid& grid, std::vector<double> samples);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] std::span<double> data() { return samples_; }
  [[nodiscard]] std::span<const double> data() const { return samples_; }

  double& operator()(int i, int j) { return samples_[index(i, j)]; }
  double operator()(int i, int j) const { return samples_[index(i, j)]; }

  /// Fills the field with f(x, y) evaluated at the collocation points.
  template <class F>
  static RealField sample(const Grid& grid, F&& f) {
    RealField out(grid);
    for (int i = 0; i < grid.nx; ++i) {
      for (int j = 0; j < grid.ny; ++j) out(i, j) = f(grid.x(i), grid.y(j));
    }
    return out;
  }

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * grid_.ny + j;
  }

  Grid grid_;
  std::vector<double> samples_;
};

/// Fourier coefficients of a real field on the torus.
///
/// The field is f(x, y) = sum_k c_k exp(i k.x) over the full wavenumber
/// lattice; only k_y >= 0 is stored and the remaining half follows from
/// Hermitian symmetry c_{-k} = conj(c_k).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] std::span<Complex> coeffs() { return coeffs_; }
  [[nodiscard]] std::span<const Complex> coeffs() const { return coeffs_; }

  /// Stored coefficient at spectral row i, column j (k_y = j).
  Complex& at(int i, int j) { return coeffs_[index(i, j)]; }
  [[nodiscard]] Complex at(int i, int j) const { return coeffs_[index(i, j)]; }

  /// Coefficient of wavenumber (kx, ky) anywhere on the full lattice.
  [[nodiscard]] Complex mode(int kx, int ky) const;
  /// Sets the coefficient of (kx, ky) and its Hermitian partner.
  void set_mode(int kx, int ky, Complex value);

  [[nodiscard]] Complex mean() const { return coeffs_.empty() ? Complex{} : coeffs_[0]; }
  [[nodiscard]] bool is_finite() const;
  /// Largest violation of c_{-k} = conj(c_k) on the self-paired columns.
  [[nodiscard]] double hermitian_defect() const;
  /// Projects the self-paired columns (k_y = 0 and k_y = ny/2) onto Hermitian form.
  void enforce_hermitian();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * grid_.nky() + j;
  }

  Grid grid_;
  std::vector<Complex> coeffs_;
};

}  // namespace abq
