#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "abq/lab/quadrature.hpp"

namespace abq::lab {

inline constexpr double kDefaultPerScale = 8.0;

/// Norms entering the anisotropic Hoelder inequality for one (f, g, h).
struct HolderNorms {
  double numerator = 0.0;  // int |f g h|
  double f_l2 = 0.0;
  double g_l2 = 0.0;
  double dyg_l2 = 0.0;
  double dxh_l2 = 0.0;
  std::map<double, double> h_lp;  // p -> ‖h‖_p for p = 2 (q - 1)
};

HolderNorms holder_norms(const TestFunction& f, const TestFunction& g, const TestFunction& h,
                         const std::vector<double>& qs, double per_scale = kDefaultPerScale);

/// int |f g h| / (‖f‖_2 ‖g‖_2^(1-1/q) ‖d_y g‖_2^(1/q) ‖h‖_{2(q-1)}^(1-1/q) ‖d_x h‖_2^(1/q)).
/// Throws UndefinedRatioError when a denominator factor vanishes.
double holder_ratio(const HolderNorms& n, double q);
double holder_ratio(const TestFunction& f, const TestFunction& g, const TestFunction& h, double q,
                    double per_scale = kDefaultPerScale);
/// The q = 2 case written out: int |f g h| / (‖f‖ ‖g‖^(1/2) ‖d_y g‖^(1/2) ‖h‖^(1/2) ‖d_x h‖^(1/2)).
double holder_ratio_q2(const HolderNorms& n);

/// Throws InputError unless p has two entries >= 1 with 1/p_1 + 1/p_2 < 1.
void check_exponents(const std::vector<double>& p);

/// sum_i (‖F‖_{p_i} + ‖d_i F‖_{p_i}) + e^3 on R^2.
double n_p_functional(const TestFunction& F, const std::vector<double>& p, double per_scale = kDefaultPerScale);

inline const std::vector<double> kEmbeddingRGrid = {2, 3, 4, 6, 8, 12, 16, 24, 32};

struct EmbeddingParts {
  double sup = 0.0;           // ‖F‖_inf
  double r_term = 0.0;        // max{1, sup_r ‖F‖_r / (r log r)^lambda}
  double r_argmax = 0.0;      // r attaining the sup over the grid
  double n_p = 0.0;
  double ratio = 0.0;
};

/// The lambda-independent pieces of the embedding ratio.
struct EmbeddingNorms {
  double sup = 0.0;
  double n_p = 0.0;
  std::vector<double> r_grid;
  std::vector<double> r_norms;  // ‖F‖_r for r in r_grid
};
EmbeddingNorms embedding_norms(const TestFunction& F, const std::vector<double>& p,
                               const std::vector<double>& r_grid = kEmbeddingRGrid,
                               double per_scale = kDefaultPerScale);
EmbeddingParts log_embedding(const EmbeddingNorms& n, double lambda);

/// ‖F‖_inf / (max{1, sup_r ‖F‖_r / (r log r)^lambda} [log N loglog N]^lambda), N = n_p(F).
EmbeddingParts log_embedding(const TestFunction& F, const std::vector<double>& p, double lambda,
                             const std::vector<double>& r_grid = kEmbeddingRGrid,
                             double per_scale = kDefaultPerScale);
double log_embedding_ratio(const TestFunction& F, const std::vector<double>& p, double lambda,
                           double per_scale = kDefaultPerScale);

/// Randomized Hoelder study: seeds [seed, seed + samples) draw (f, g, h);
/// the first half calibrates C(q), the second half is held out.
struct HolderStudy {
  std::vector<double> qs;
  int samples = 0;
  std::map<double, double> calibration_max;
  std::map<double, double> heldout_max;
  bool all_finite = true;
  double q2_formula_max_diff = 0.0;   // relative, general vs specialized at q = 2
  double certificate_max_diff = 0.0;  // relative, maximizing samples at doubled resolution
  double heldout_margin = 0.25;
  bool pass = false;
};
HolderStudy holder_study(std::uint64_t seed, int samples, const std::vector<double>& qs = {2, 3, 4});

/// Randomized embedding study: C(lambda) = max ratio over `samples` seeds and
/// their dilations F(a x), a in `dilations`. The stress dilations extend each
/// family beyond that range and must stay below (1 + stress_margin) C.
struct EmbeddingStudy {
  std::vector<double> p;
  std::vector<double> lambdas;
  std::vector<double> dilations;
  std::vector<double> stress_dilations;
  int samples = 0;
  std::map<double, double> c_hat;
  std::map<double, double> c_hat_dilation;  // a attaining C
  std::map<double, double> undilated_max;
  std::map<double, double> stress_max;
  std::map<double, int> argmax_at_grid_end;  // samples whose r-sup sits at the last grid entry
  bool all_finite = true;
  double certificate_max_diff = 0.0;
  double stress_margin = 0.25;
  bool pass = false;
};
EmbeddingStudy embedding_study(std::uint64_t seed, int samples, const std::vector<double>& p = {4, 4},
                               const std::vector<double>& lambdas = {0.5, 1.0},
                               const std::vector<double>& dilations = {1, 2, 4, 8},
                               const std::vector<double>& stress_dilations = {16, 32, 64});

}  // namespace abq::lab
