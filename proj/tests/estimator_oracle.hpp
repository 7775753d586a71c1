#pragma once

// Monte-Carlo checks of the zeroth-order estimators against an independent
// finite-difference gradient of the ball-smoothed objective. Shared by the
// unit tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pointing/game.hpp"
#include "pointing/seeker.hpp"

namespace pointing::oracle {

/// Fixed LISA-type quadratic game: a hand-picked truth and a mean point away
/// from the manifold.
struct QuadraticFixture {
  GroundTruth truth;
  GameConfig cfg;
  JointVec mu{};
  double r = 0.58;
  std::size_t player = 0;

  QuadraticFixture() {
    truth.delta_x0 = {StateVec4{{2.0, -1.0, 0.5, 1.5}}, StateVec4{{-2.5, 1.0, -0.5, 0.0}},
                      StateVec4{{0.5, 2.5, 1.0, -2.0}}};
    mu = {StateVec4{{0.3, 0.2, -0.1, 0.0}}, StateVec4{{-0.2, 0.0, 0.4, 0.1}}, StateVec4{{0.0, -0.3, 0.0, 0.2}}};
  }
  double h(const JointVec& u) const { return objective(player, u, truth, cfg); }
};

/// Uniform point in the 12-dimensional unit ball.
inline std::array<double, 12> ball12(std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 12> v{};
  double s = 0.0;
  for (auto& x : v) {
    x = n(g);
    s += x * x;
  }
  const double scale = std::pow(u(g), 1.0 / 12.0) / std::sqrt(s);
  for (auto& x : v) x *= scale;
  return v;
}

/// Central finite differences of h̃(μ) = E_ξ[h(μ + rξ)], ξ ~ U(B¹²), with the
/// expectation replaced by an average over `samples` common draws.
inline StateVec4 smoothed_gradient_fd(const QuadraticFixture& f, std::size_t samples, double delta,
                                      std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<std::array<double, 12>> xi(samples);
  for (auto& x : xi) x = ball12(g);
  auto smoothed = [&](const JointVec& mu) {
    double acc = 0.0;
    for (const auto& x : xi) {
      JointVec u = mu;
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t c = 0; c < 4; ++c) u[p][c] += f.r * x[4 * p + c];
      acc += f.h(u);
    }
    return acc / static_cast<double>(samples);
  };
  StateVec4 grad;
  for (std::size_t c = 0; c < 4; ++c) {
    JointVec plus = f.mu, minus = f.mu;
    plus[f.player][c] += delta;
    minus[f.player][c] -= delta;
    grad[c] = (smoothed(plus) - smoothed(minus)) / (2.0 * delta);
  }
  return grad;
}

struct EstimatorSamples {
  std::vector<StateVec4> residual;
  std::vector<StateVec4> onepoint;
};

/// Draws `n` independent estimator samples at fixed μ, r. Each residual
/// sample uses a fresh (previous, current) perturbation pair; the one-point
/// sample reuses the current perturbation.
inline EstimatorSamples draw_estimates(const QuadraticFixture& f, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  EstimatorSamples out;
  out.residual.reserve(n);
  out.onepoint.reserve(n);
  auto perturbed = [&](JointVec& zeta) {
    JointVec u = f.mu;
    for (std::size_t p = 0; p < 3; ++p) {
      zeta[p] = sample_unit_sphere(rng);
      u[p] += f.r * zeta[p];
    }
    return f.h(u);
  };
  JointVec z_prev, z_now;
  for (std::size_t k = 0; k < n; ++k) {
    const double h_prev = perturbed(z_prev);
    const double h_now = perturbed(z_now);
    out.residual.push_back(gradient_estimate_residual(h_now, h_prev, f.r, z_now[f.player]));
    out.onepoint.push_back(gradient_estimate_onepoint(h_now, f.r, z_now[f.player]));
  }
  return out;
}

inline StateVec4 mean(const std::vector<StateVec4>& v) {
  StateVec4 m;
  for (const auto& x : v) m += x;
  return m * (1.0 / static_cast<double>(v.size()));
}

/// Total variance (trace of the covariance) of the selected samples.
inline double total_variance(const std::vector<StateVec4>& v, const std::vector<std::size_t>* idx = nullptr) {
  const std::size_t n = idx ? idx->size() : v.size();
  StateVec4 m;
  for (std::size_t k = 0; k < n; ++k) m += v[idx ? (*idx)[k] : k];
  m *= 1.0 / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += (v[idx ? (*idx)[k] : k] - m).squared_norm();
  return s / static_cast<double>(n - 1);
}

/// Lower `alpha` quantile of the paired bootstrap distribution of
/// Var(onepoint) − Var(residual).
inline double bootstrap_variance_gap_lower(const EstimatorSamples& s, std::size_t replicates, double alpha,
                                           std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<std::size_t> pick(0, s.residual.size() - 1);
  std::vector<std::size_t> idx(s.residual.size());
  std::vector<double> gaps;
  gaps.reserve(replicates);
  for (std::size_t b = 0; b < replicates; ++b) {
    for (auto& i : idx) i = pick(g);
    gaps.push_back(total_variance(s.onepoint, &idx) - total_variance(s.residual, &idx));
  }
  std::sort(gaps.begin(), gaps.end());
  return gaps[static_cast<std::size_t>(alpha * static_cast<double>(replicates))];
}

}  // namespace pointing::oracle
