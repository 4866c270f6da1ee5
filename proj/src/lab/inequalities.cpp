#include "abq/lab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "abq/errors.hpp"

namespace abq::lab {
namespace {

constexpr double kE3 = 20.085536923187668;

double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

std::vector<double> product_abs(const Samples& a, const Samples& b, const Samples& c) {
  std::vector<double> out(a.f.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::abs(a.f[k] * b.f[k] * c.f[k]);
  return out;
}

struct Triple {
  TestFunction f, g, h;
};

Triple draw_triple(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Triple t{random_function(rng), random_function(rng), random_function(rng)};
  return t;
}

}  // namespace

HolderNorms holder_norms(const TestFunction& f, const TestFunction& g, const TestFunction& h,
                         const std::vector<double>& qs, double per_scale) {
  const TestFunction* fs[] = {&f, &g, &h};
  const QuadBox box = box_for(fs, per_scale);
  const Samples sf = sample(f, box);
  const Samples sg = sample(g, box);
  const Samples sh = sample(h, box);
  HolderNorms n;
  n.numerator = integrate(box, product_abs(sf, sg, sh));
  n.f_l2 = lp_norm(box, sf.f, 2.0);
  n.g_l2 = lp_norm(box, sg.f, 2.0);
  n.dyg_l2 = lp_norm(box, sg.fy, 2.0);
  n.dxh_l2 = lp_norm(box, sh.fx, 2.0);
  for (double q : qs) {
    if (!(q >= 2.0)) throw InputError("Hoelder exponent q must be >= 2");
    const double p = 2.0 * (q - 1.0);
    if (!n.h_lp.contains(p)) n.h_lp[p] = lp_norm(box, sh.f, p);
  }
  return n;
}

double holder_ratio(const HolderNorms& n, double q) {
  const double p = 2.0 * (q - 1.0);
  const auto it = n.h_lp.find(p);
  if (it == n.h_lp.end()) throw InputError("norm of h in L^" + std::to_string(p) + " was not computed");
  if (n.f_l2 == 0.0 || n.g_l2 == 0.0 || n.dyg_l2 == 0.0 || it->second == 0.0 || n.dxh_l2 == 0.0) {
    throw UndefinedRatioError("Hoelder ratio undefined: a denominator norm vanishes");
  }
  const double a = 1.0 - 1.0 / q;
  const double b = 1.0 / q;
  const double den = n.f_l2 * std::pow(n.g_l2, a) * std::pow(n.dyg_l2, b) * std::pow(it->second, a) *
                     std::pow(n.dxh_l2, b);
  return n.numerator / den;
}

double holder_ratio(const TestFunction& f, const TestFunction& g, const TestFunction& h, double q,
                    double per_scale) {
  return holder_ratio(holder_norms(f, g, h, {q}, per_scale), q);
}

double holder_ratio_q2(const HolderNorms& n) {
  const auto it = n.h_lp.find(2.0);
  if (it == n.h_lp.end()) throw InputError("norm of h in L^2 was not computed");
  if (n.f_l2 == 0.0 || n.g_l2 == 0.0 || n.dyg_l2 == 0.0 || it->second == 0.0 || n.dxh_l2 == 0.0) {
    throw UndefinedRatioError("Hoelder ratio undefined: a denominator norm vanishes");
  }
  return n.numerator / (n.f_l2 * std::sqrt(n.g_l2 * n.dyg_l2 * it->second * n.dxh_l2));
}

void check_exponents(const std::vector<double>& p) {
  if (p.size() != 2) throw InputError("exponent list must have one entry per dimension (2)");
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 1.0) || !std::isfinite(v)) throw InputError("exponents must be finite and >= 1");
    s += 1.0 / v;
  }
  if (!(s < 1.0)) {
    throw InputError("exponents violate the hypothesis sum_i 1/p_i < 1 (sum = " + std::to_string(s) + ")");
  }
}

namespace {

double n_p_from(const QuadBox& box, const Samples& s, const std::vector<double>& p) {
  double total = kE3;
  total += lp_norm(box, s.f, p[0]) + lp_norm(box, s.fx, p[0]);
  total += lp_norm(box, s.f, p[1]) + lp_norm(box, s.fy, p[1]);
  return total;
}

}  // namespace

double n_p_functional(const TestFunction& F, const std::vector<double>& p, double per_scale) {
  check_exponents(p);
  if (F.is_zero()) return kE3;
  const QuadBox box = box_for(F, per_scale);
  return n_p_from(box, sample(F, box), p);
}

EmbeddingNorms embedding_norms(const TestFunction& F, const std::vector<double>& p,
                               const std::vector<double>& r_grid, double per_scale) {
  check_exponents(p);
  for (double r : r_grid) {
    if (!(r >= 2.0)) throw InputError("r-grid entries must be >= 2");
  }
  EmbeddingNorms n;
  n.n_p = kE3;
  n.r_grid = r_grid;
  n.r_norms.assign(r_grid.size(), 0.0);
  if (F.is_zero()) return n;
  const QuadBox box = box_for(F, per_scale);
  const Samples s = sample(F, box);
  n.sup = sup_norm(F, box, s.f);
  n.n_p = n_p_from(box, s, p);
  for (std::size_t k = 0; k < r_grid.size(); ++k) n.r_norms[k] = lp_norm(box, s.f, r_grid[k]);
  return n;
}

EmbeddingParts log_embedding(const EmbeddingNorms& n, double lambda) {
  if (!(lambda > 0.0)) throw InputError("lambda must be positive");
  EmbeddingParts e;
  e.sup = n.sup;
  e.n_p = n.n_p;
  double best = 0.0;
  for (std::size_t k = 0; k < n.r_grid.size(); ++k) {
    const double r = n.r_grid[k];
    const double v = n.r_norms[k] / std::pow(r * std::log(r), lambda);
    if (v > best) {
      best = v;
      e.r_argmax = r;
    }
  }
  e.r_term = std::max(1.0, best);
  const double l = std::log(e.n_p);
  e.ratio = e.sup / (e.r_term * std::pow(l * std::log(l), lambda));
  return e;
}

EmbeddingParts log_embedding(const TestFunction& F, const std::vector<double>& p, double lambda,
                             const std::vector<double>& r_grid, double per_scale) {
  if (!(lambda > 0.0)) throw InputError("lambda must be positive");
  return log_embedding(embedding_norms(F, p, r_grid, per_scale), lambda);
}

double log_embedding_ratio(const TestFunction& F, const std::vector<double>& p, double lambda,
                           double per_scale) {
  return log_embedding(F, p, lambda, kEmbeddingRGrid, per_scale).ratio;
}

HolderStudy holder_study(std::uint64_t seed, int samples, const std::vector<double>& qs) {
  if (samples < 2) throw InputError("Hoelder study needs at least 2 samples");
  HolderStudy st;
  st.qs = qs;
  st.samples = samples;
  const int half = samples / 2;
  std::map<double, std::uint64_t> argmax;
  std::map<double, double> best;
  for (int k = 0; k < samples; ++k) {
    const Triple t = draw_triple(seed + static_cast<std::uint64_t>(k));
    const HolderNorms n = holder_norms(t.f, t.g, t.h, qs);
    for (double q : qs) {
      const double r = holder_ratio(n, q);
      if (!std::isfinite(r)) st.all_finite = false;
      auto& slot = k < half ? st.calibration_max[q] : st.heldout_max[q];
      slot = std::max(slot, r);
      if (r > best[q]) {
        best[q] = r;
        argmax[q] = seed + static_cast<std::uint64_t>(k);
      }
      if (q == 2.0) st.q2_formula_max_diff = std::max(st.q2_formula_max_diff, rel_diff(r, holder_ratio_q2(n)));
    }
  }
  for (const auto& [q, s] : argmax) {
    const Triple t = draw_triple(s);
    const double coarse = holder_ratio(t.f, t.g, t.h, q);
    const double fine = holder_ratio(t.f, t.g, t.h, q, 2.0 * kDefaultPerScale);
    st.certificate_max_diff = std::max(st.certificate_max_diff, rel_diff(coarse, fine));
  }
  st.pass = st.all_finite && st.q2_formula_max_diff <= 1e-12;
  for (double q : qs) {
    st.pass = st.pass && st.heldout_max[q] < (1.0 + st.heldout_margin) * st.calibration_max[q];
  }
  return st;
}

EmbeddingStudy embedding_study(std::uint64_t seed, int samples, const std::vector<double>& p,
                               const std::vector<double>& lambdas, const std::vector<double>& dilations,
                               const std::vector<double>& stress_dilations) {
  check_exponents(p);
  if (samples < 1) throw InputError("embedding study needs at least 1 sample");
  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw InputError("lambda must be positive");
  }
  EmbeddingStudy st;
  st.p = p;
  st.lambdas = lambdas;
  st.dilations = dilations;
  st.stress_dilations = stress_dilations;
  st.samples = samples;
  struct Arg {
    int k = 0;
    double a = 1.0;
  };
  std::map<double, Arg> arg;
  for (int k = 0; k < samples; ++k) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
    const TestFunction f = random_function(rng);
    auto visit = [&](double a, bool stress) {
      const EmbeddingNorms n = embedding_norms(f.dilated(a), p);
      for (double lambda : lambdas) {
        const EmbeddingParts e = log_embedding(n, lambda);
        if (!std::isfinite(e.ratio)) st.all_finite = false;
        if (stress) {
          st.stress_max[lambda] = std::max(st.stress_max[lambda], e.ratio);
          continue;
        }
        if (a == 1.0) {
          st.undilated_max[lambda] = std::max(st.undilated_max[lambda], e.ratio);
          if (e.r_argmax == kEmbeddingRGrid.back()) ++st.argmax_at_grid_end[lambda];
        }
        if (e.ratio > st.c_hat[lambda]) {
          st.c_hat[lambda] = e.ratio;
          st.c_hat_dilation[lambda] = a;
          arg[lambda] = {k, a};
        }
      }
    };
    for (double a : dilations) visit(a, false);
    for (double a : stress_dilations) visit(a, true);
  }
  for (const auto& [lambda, w] : arg) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(w.k));
    const TestFunction f = random_function(rng).dilated(w.a);
    const double fine = log_embedding(f, p, lambda, kEmbeddingRGrid, 2.0 * kDefaultPerScale).ratio;
    st.certificate_max_diff = std::max(st.certificate_max_diff, rel_diff(st.c_hat[lambda], fine));
  }
  st.pass = st.all_finite && st.certificate_max_diff <= 1e-6;
  for (double lambda : lambdas) {
    st.pass = st.pass && st.stress_max[lambda] <= (1.0 + st.stress_margin) * st.c_hat[lambda];
  }
  return st;
}

}  // namespace abq::lab
