#include "abq/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abq/errors.hpp"

namespace abq {

Grid::Grid(int nx_, int ny_) : nx(nx_), ny(ny_) {
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
    throw InputError("grid dimensions must be even and >= 8, got " + std::to_string(nx) + "x" +
                     std::to_string(ny));
  }
}

RealField::RealField(const Grid& grid) : grid_(grid), samples_(grid.real_size(), 0.0) {}

RealField::RealField(const Grid& grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.real_size()) {
    throw InputError("sample count " + std::to_string(samples_.size()) + " does not match grid " +
                     std::to_string(grid_.nx) + "x" + std::to_string(grid_.ny));
  }
}

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.spectral_size()) {}

Complex SpectralField::mode(int kx, int ky) const {
  if (ky < 0) return std::conj(mode(-kx, -ky));
  if (ky > grid_.ny / 2 || kx > grid_.nx / 2 || kx <= -grid_.nx / 2) return {};
  return at(grid_.row_of(kx), ky);
}

void SpectralField::set_mode(int kx, int ky, Complex value) {
  if (ky < 0) {
    set_mode(-kx, -ky, std::conj(value));
    return;
  }
  if (ky > grid_.ny / 2 || kx > grid_.nx / 2 || kx <= -grid_.nx / 2) {
    throw InputError("mode (" + std::to_string(kx) + ", " + std::to_string(ky) +
                     ") is not representable on this grid");
  }
  at(grid_.row_of(kx), ky) = value;
  if (ky == 0 || ky == grid_.ny / 2) at(grid_.row_of(-kx), ky) = std::conj(value);
}

bool SpectralField::is_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (int j : {0, grid_.ny / 2}) {
    for (int i = 0; i < grid_.nx; ++i) {
      const int partner = grid_.row_of(-grid_.kx(i));
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(partner, j))));
    }
  }
  return worst;
}

void SpectralField::enforce_hermitian() {
  for (int j : {0, grid_.ny / 2}) {
    for (int i = 0; i < grid_.nx; ++i) {
      const int partner = grid_.row_of(-grid_.kx(i));
      if (partner < i) continue;
      const Complex avg = 0.5 * (at(i, j) + std::conj(at(partner, j)));
      at(i, j) = avg;
      at(partner, j) = std::conj(avg);
    }
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw InputError("grid mismatch in spectral addition");
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += other.coeffs_[n];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw InputError("grid mismatch in spectral subtraction");
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= other.coeffs_[n];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

}  // namespace abq
