#pragma once

#include <array>
#include <cstddef>

#include "pointing/rng.hpp"
#include "pointing/state.hpp"

namespace pointing {

/// The hidden initial errors δx_0^i. Known to the simulator only.
struct GroundTruth {
  JointVec delta_x0{};

  /// Largest pairwise ‖δx_0^i − δx_0^j‖.
  double max_pairwise_distance() const;
};

struct GameConfig {
  double uc_radius = 9.0;                 // μrad
  double w = 1.0 / (9.0 * 9.0);           // 1/μrad²
  double b = 4.5;                         // final box half-width, μrad

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Misalignment seen by a sensor: ‖(a − b) − (truth_i − truth_j)‖.
/// No saturation above the cone size.
double measure_misalignment(const StateVec4& a, const StateVec4& b, const StateVec4& truth_i,
                            const StateVec4& truth_j);

/// Pairwise misalignments (y12, y13, y23) for joint states `x`.
std::array<double, 3> pairwise_misalignments(const JointVec& x, const GroundTruth& truth);

/// h^i = w·(y_ij² + y_ik²) for player `i` (0-based). Throws std::out_of_range
/// for i >= kPlayers.
double objective(std::size_t i, const JointVec& u, const GroundTruth& truth, const GameConfig& cfg);

/// Same objective computed from already measured pair misalignments.
double objective_from_misalignments(std::size_t i, const std::array<double, 3>& y, double w);

/// Draws every δx_0^i uniformly in the ball of radius uc_radius/2, then
/// rejects draws violating the pairwise bound.
GroundTruth sample_initial_conditions(Rng& rng, double uc_radius);

/// True iff every pair satisfies ‖(u^i − u^j) − (δx_0^i − δx_0^j)‖ <= tol.
bool is_on_ne_manifold(const JointVec& u, const GroundTruth& truth, double tol);

}  // namespace pointing
