#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abq/state.hpp"

namespace abq {

/// Named initial condition with numeric parameters.
///
///   taylor-vortex       omega = 2a sin x sin y, theta = b (P(x) P(y) - 1) / P_max^2 with
///                       P the Poisson kernel of radius rho (coefficients decay like rho^|k|)
///                       params: amplitude (1), buoyancy (1), rho (0.55)
///   shear-front         u1 = U tanh(sin y / delta), theta = tanh(cos y / delta) + eps sin x cos y
///                       params: velocity (1), delta (0.3), perturbation (0.1)
///   single-mode         omega = -a m sin(m y), theta = b cos(m y)  (u1 = a cos(m y))
///                       params: omega_amplitude (0), theta_amplitude (1), m (1)
///   random-bandlimited  Gaussian coefficients for |k| <= kmax weighted by (1 + |k|^2)^(-slope/2),
///                       scaled to the requested L2 norms; needs a seed
///                       params: kmax (8), slope (2), omega_l2 (2 pi), theta_l2 (2 pi)
///   rough               coefficients exp(-|kx| / 2) (1 + |ky|)^(-decay) with random phases on
///                       every resolved mode; needs a seed. params: decay (1.1), amplitude (1)
///
/// The vorticity has zero mean. Smooth ICs are projected onto the dealiased
/// band when `dealias` is set.
struct IcSpec {
  std::string name;
  std::map<std::string, double> params;
  std::optional<std::uint64_t> seed;
};

const std::vector<std::string>& ic_names();
/// Parameter names accepted by an IC (throws ConfigError for unknown names).
const std::vector<std::string>& ic_parameters(const std::string& name);
bool ic_needs_seed(const std::string& name);

/// Throws ConfigError on an unknown name or parameter, or a missing seed.
State make_initial_state(const Grid& grid, const IcSpec& spec, bool dealias = true);

}  // namespace abq
