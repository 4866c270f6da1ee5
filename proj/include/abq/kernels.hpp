#pragma once

#include <complex>
#include <span>

// Data-parallel inner loops of the spectral solver.
//
// Every kernel exists twice: a plain serial loop (the reference used by the
// tests) and an OpenMP version that the solver calls. Reductions are blocked
// by rows of `row_length` elements and the row partials are summed in row
// order, so the two versions return bit-identical results for any thread count.

namespace abq::kernels {

using Complex = std::complex<double>;

namespace serial {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
// out = -(u1*fx + u2*fy)
void advect(std::span<const double> u1, std::span<const double> u2,
            std::span<const double> fx, std::span<const double> fy, std::span<double> out);
double sum_abs_pow(std::span<const double> f, std::size_t row_length, double q);
double sum_product(std::span<const double> a, std::span<const double> b, std::size_t row_length);
double sum_product(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c, std::size_t row_length);
double sum_abs_product(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::size_t row_length);
double max_abs(std::span<const double> f);
void scale_modes(std::span<Complex> c, std::span<const double> factor);
// out = a*x + b*y
void combine(double a, std::span<const Complex> x, double b, std::span<const Complex> y,
             std::span<Complex> out);
// sum_k w_k |c_k|^2 with w = 1 on the self-paired columns and 2 elsewhere
double half_spectrum_energy(std::span<const Complex> c, int nky, int ny);

}  // namespace serial

namespace omp {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void advect(std::span<const double> u1, std::span<const double> u2,
            std::span<const double> fx, std::span<const double> fy, std::span<double> out);
double sum_abs_pow(std::span<const double> f, std::size_t row_length, double q);
double sum_product(std::span<const double> a, std::span<const double> b, std::size_t row_length);
double sum_product(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c, std::size_t row_length);
double sum_abs_product(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::size_t row_length);
double max_abs(std::span<const double> f);
void scale_modes(std::span<Complex> c, std::span<const double> factor);
void combine(double a, std::span<const Complex> x, double b, std::span<const Complex> y,
             std::span<Complex> out);
double half_spectrum_energy(std::span<const Complex> c, int nky, int ny);

}  // namespace omp

}  // namespace abq::kernels
