#pragma once

#include <cstdint>

#include "pointing/state.hpp"

namespace pointing {

/// Closed-loop time constant and guidance period, both in iteration-time
/// units. The default is Δt = τ_g = 1, τ_c = 1/17.
struct PlantParams {
  double tau_c = 1.0 / 17.0;
  double tau_g = 1.0;

  /// Requires both positive and τ_g/τ_c >= 10.
  void validate() const;

  double decay() const;  // exp(−τ_g/τ_c)
};

struct PlantState {
  JointVec delta_x{};
  std::uint64_t t = 0;
};

/// Exact solution of δẋ = (u − δx)/τ_c over one guidance period with u held.
PlantState plant_step(const PlantState& state, const JointVec& u, const PlantParams& p);

/// ‖δx(t_k) − u_prev‖ over the stacked 12-vector.
double tracking_residual(const PlantState& state, const JointVec& u_prev);

}  // namespace pointing
