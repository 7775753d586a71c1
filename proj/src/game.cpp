#include "pointing/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pointing {

double GroundTruth::max_pairwise_distance() const {
  double worst = 0.0;
  for (const auto& [i, j] : kPairs) worst = std::max(worst, (delta_x0[i] - delta_x0[j]).norm());
  return worst;
}

void GameConfig::validate() const {
  if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("w must be > 0");
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("b must be > 0");
  if (!(uc_radius > 0.0) || !std::isfinite(uc_radius))
    throw std::invalid_argument("uc_radius must be > 0");
}

double measure_misalignment(const StateVec4& a, const StateVec4& b, const StateVec4& truth_i,
                            const StateVec4& truth_j) {
  return ((a - b) - (truth_i - truth_j)).norm();
}

std::array<double, 3> pairwise_misalignments(const JointVec& x, const GroundTruth& truth) {
  std::array<double, 3> y{};
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    const auto [i, j] = kPairs[p];
    y[p] = measure_misalignment(x[i], x[j], truth.delta_x0[i], truth.delta_x0[j]);
  }
  return y;
}

double objective_from_misalignments(std::size_t i, const std::array<double, 3>& y, double w) {
  if (i >= kPlayers) throw std::out_of_range("player index out of range");
  double sum = 0.0;
  for (std::size_t j = 0; j < kPlayers; ++j) {
    if (j == i) continue;
    const double yij = y[pair_index(i, j)];
    sum += yij * yij;
  }
  return w * sum;
}

double objective(std::size_t i, const JointVec& u, const GroundTruth& truth, const GameConfig& cfg) {
  return objective_from_misalignments(i, pairwise_misalignments(u, truth), cfg.w);
}

namespace {

StateVec4 uniform_in_ball(Rng& rng, double radius) {
  StateVec4 v;
  double n2 = 0.0;
  do {
    for (std::size_t k = 0; k < kStateDim; ++k) v[k] = rng.normal();
    n2 = v.squared_norm();
  } while (n2 == 0.0);
  // Radial CDF in d dimensions is (r/R)^d.
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(kStateDim));
  return v * (r / std::sqrt(n2));
}

}  // namespace

GroundTruth sample_initial_conditions(Rng& rng, double uc_radius) {
  if (!(uc_radius > 0.0)) throw std::invalid_argument("uc_radius must be > 0");
  GroundTruth t;
  do {
    for (auto& v : t.delta_x0) v = uniform_in_ball(rng, 0.5 * uc_radius);
  } while (t.max_pairwise_distance() > uc_radius);
  return t;
}

bool is_on_ne_manifold(const JointVec& u, const GroundTruth& truth, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tol must be >= 0");
  for (const double y : pairwise_misalignments(u, truth))
    if (y > tol) return false;
  return true;
}

}  // namespace pointing
