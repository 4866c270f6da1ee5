#pragma once

#include <map>
#include <span>
#include <vector>

#include "abq/field.hpp"

namespace abq {

/// Norms of one scalar field on the torus.
struct NormSet {
  double l2 = 0.0;
  std::map<double, double> lq;  // q -> ||f||_q
  double linf = 0.0;
  double dx_l2 = 0.0;
  double dy_l2 = 0.0;
  double h1 = 0.0;
};

/// L2 norm via Parseval.
double l2_norm(const SpectralField& f);
/// ||f||_2^2 via Parseval.
double l2_norm_squared(const SpectralField& f);
/// L^q norm by trapezoidal quadrature of the collocation samples.
double lq_norm(const RealField& f, double q);
double lq_norm(const SpectralField& f, double q);

/// Supremum of |f| over the torus.
///
/// Starts from the largest collocation samples and refines each candidate by
/// Newton iteration on the trigonometric interpolant, so the result is the
/// maximum of the band-limited field and not only of its samples.
double linf_norm(const SpectralField& f);
/// max |f| over the collocation samples only.
double grid_max_abs(const RealField& f);

/// Value and derivatives of the trigonometric interpolant at a point.
struct PointEval {
  double value = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  double fxx = 0.0;
  double fxy = 0.0;
  double fyy = 0.0;
};
PointEval evaluate(const SpectralField& f, double x, double y);

/// All norms of f. q values must be >= 1 and finite.
NormSet norms(const SpectralField& f, std::span<const double> qset);

/// Integral over the torus of the pointwise product of 2 or 3 fields.
/// The product is formed on a grid fine enough to be alias-free, so the
/// trapezoidal sum is exact for the band-limited inputs.
double integral_product(std::span<const SpectralField* const> fields);
double integral_product(const SpectralField& a, const SpectralField& b);
double integral_product(const SpectralField& a, const SpectralField& b, const SpectralField& c);

}  // namespace abq
