#pragma once

#include <cstddef>
#include <numbers>

namespace abq {

/// Uniform collocation grid on the periodic torus [0, 2*pi)^2.
///
/// Physical samples are stored row-major with x as the slow index:
/// sample (i, j) sits at (2*pi*i/nx, 2*pi*j/ny) and has flat index i*ny + j.
/// Spectral storage keeps the non-negative half of the k_y axis
/// (ny/2 + 1 columns), so mode (i, j) has flat index i*nky() + j.
struct Grid {
  static constexpr double length = 2.0 * std::numbers::pi;

  int nx = 0;
  int ny = 0;

  Grid() = default;
  Grid(int nx_, int ny_);

  [[nodiscard]] int nky() const { return ny / 2 + 1; }
  [[nodiscard]] std::size_t real_size() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }
  [[nodiscard]] std::size_t spectral_size() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nky());
  }

  /// Wavenumber of spectral row i; the set is {-nx/2+1, ..., nx/2}.
  [[nodiscard]] int kx(int i) const { return i <= nx / 2 ? i : i - nx; }
  [[nodiscard]] int ky(int j) const { return j; }
  /// Row index holding wavenumber k (k taken modulo nx).
  [[nodiscard]] int row_of(int k) const { return ((k % nx) + nx) % nx; }

  [[nodiscard]] double dx() const { return length / nx; }
  [[nodiscard]] double dy() const { return length / ny; }
  [[nodiscard]] double cell_area() const { return dx() * dy(); }
  [[nodiscard]] static constexpr double area() { return length * length; }

  [[nodiscard]] double x(int i) const { return dx() * i; }
  [[nodiscard]] double y(int j) const { return dy() * j; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

}  // namespace abq
