#include "abq/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "abq/errors.hpp"
#include "abq/parallel.hpp"

namespace abq {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// fftw planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(const Grid& grid) {
    const int threads = parallel::max_threads();
    const auto key = std::make_tuple(grid.nx, grid.ny, threads);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    fftw_plan_with_nthreads(threads);
    std::vector<double> real(grid.real_size());
    std::vector<Complex> spec(grid.spectral_size());
    auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair pair;
    pair.r2c = fftw_plan_dft_r2c_2d(grid.nx, grid.ny, real.data(), cplx, flags);
    pair.c2r = fftw_plan_dft_c2r_2d(grid.nx, grid.ny, cplx, real.data(), flags);
    plans_.emplace(key, pair);
    return pair;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() { fftw_init_threads(); }
  ~PlanCache() {
    for (auto& [key, pair] : plans_) {
      fftw_destroy_plan(pair.r2c);
      fftw_destroy_plan(pair.c2r);
    }
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, PlanPair> plans_;
};

}  // namespace

SpectralField forward(const RealField& f) {
  const Grid& grid = f.grid();
  if (f.data().size() != grid.real_size()) throw InputError("sample array does not match grid");
  const PlanPair plans = PlanCache::instance().get(grid);

  // r2c does not modify its input, but the fftw signature is non-const.
  std::vector<double> input(f.data().begin(), f.data().end());
  SpectralField out(grid);
  fftw_execute_dft_r2c(plans.r2c, input.data(),
                       reinterpret_cast<fftw_complex*>(out.coeffs().data()));
  const double scale = 1.0 / static_cast<double>(grid.real_size());
  out *= scale;
  out.enforce_hermitian();
  return out;
}

RealField inverse(const SpectralField& f) {
  const Grid& grid = f.grid();
  const PlanPair plans = PlanCache::instance().get(grid);
  // c2r destroys its input.
  std::vector<Complex> scratch(f.coeffs().begin(), f.coeffs().end());
  RealField out(grid);
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data().data());
  return out;
}

SpectralField resample(const SpectralField& f, const Grid& target) {
  const Grid& src = f.grid();
  if (src == target) return f;
  SpectralField out(target);
  for (int i = 0; i < src.nx; ++i) {
    const int kx = src.kx(i);
    for (int j = 0; j < src.nky(); ++j) {
      const Complex c = f.at(i, j);
      if (c == Complex{}) continue;
      const bool nyq_x = kx == src.nx / 2 && target.nx > src.nx;
      const bool nyq_y = j == src.ny / 2 && target.ny > src.ny;
      // Modes that do not fit strictly inside a smaller target band are dropped.
      if (target.nx < src.nx && (kx >= target.nx / 2 || kx <= -target.nx / 2)) continue;
      if (target.ny < src.ny && j >= target.ny / 2) continue;
      // A source Nyquist coefficient stands for a cosine; on a finer grid it
      // splits evenly between +k and -k.
      const double wy = nyq_y ? 0.5 : 1.0;
      if (nyq_x) {
        out.at(target.row_of(kx), j) += 0.5 * wy * c;
        out.at(target.row_of(-kx), j) += 0.5 * wy * c;
      } else {
        out.at(target.row_of(kx), j) += wy * c;
      }
    }
  }
  return out;
}

RealField inverse_on(const SpectralField& f, const Grid& target) {
  return inverse(resample(f, target));
}

}  // namespace abq
