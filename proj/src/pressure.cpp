#include "abq/pressure.hpp"

#include "abq/kernels.hpp"
#include "abq/transform.hpp"

namespace abq {

Velocity momentum_advection(const Velocity& u, bool dealias_output) {
  const Grid& g = u.u1.grid();
  const RealField u1 = inverse(u.u1);
  const RealField u2 = inverse(u.u2);
  auto component = [&](const SpectralField& c) {
    const RealField cx = inverse(derivative(c, Axis::x));
    const RealField cy = inverse(derivative(c, Axis::y));
    RealField out(g);
    // advect() returns -(u.grad c)
    kernels::omp::advect(u1.data(), u2.data(), cx.data(), cy.data(), out.data());
    SpectralField s = forward(out);
    s *= -1.0;
    if (dealias_output) dealias_in_place(s);
    return s;
  };
  return {component(u.u1), component(u.u2)};
}

SpectralField pressure_from_state(const State& state, bool dealias_output) {
  const Velocity u = velocity_from_vorticity(state.omega);
  const Velocity adv = momentum_advection(u, dealias_output);
  SpectralField source = derivative(state.theta, Axis::y);
  source -= divergence(adv);
  // the source has zero mean by construction; drop round-off before inverting
  source.at(0, 0) = Complex{};
  return inverse_laplacian(source);
}

}  // namespace abq
