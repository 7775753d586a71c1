#include "pointing/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace pointing {

void PlantParams::validate() const {
  if (!(tau_c > 0.0) || !std::isfinite(tau_c)) throw std::invalid_argument("tau_c must be > 0");
  if (!(tau_g > 0.0) || !std::isfinite(tau_g)) throw std::invalid_argument("tau_g must be > 0");
  // Small slack so the nominal 1/17 parameterization never trips on rounding.
  if (tau_g / tau_c < 10.0 * (1.0 - 1e-12))
    throw std::invalid_argument("tau_g/tau_c must be >= 10 (guidance much slower than control loop)");
}

double PlantParams::decay() const { return std::exp(-tau_g / tau_c); }

PlantState plant_step(const PlantState& state, const JointVec& u, const PlantParams& p) {
  const double decay = p.decay();
  PlantState next;
  next.t = state.t + 1;
  for (std::size_t i = 0; i < kPlayers; ++i) next.delta_x[i] = u[i] + (state.delta_x[i] - u[i]) * decay;
  return next;
}

double tracking_residual(const PlantState& state, const JointVec& u_prev) {
  double s = 0.0;
  for (std::size_t i = 0; i < kPlayers; ++i) s += (state.delta_x[i] - u_prev[i]).squared_norm();
  return std::sqrt(s);
}

}  // namespace pointing
