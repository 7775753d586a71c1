#include "pointing/seeker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pointing {

std::string_view to_string(Variant v) { return v == Variant::kFull ? "full" : "baseline"; }

std::string_view to_string(MomentumForm m) {
  return m == MomentumForm::kDamped ? "damped" : "heavy_ball";
}

Variant parse_variant(std::string_view s) {
  if (s == "full") return Variant::kFull;
  if (s == "baseline") return Variant::kBaseline;
  throw std::invalid_argument("variant must be one of full|baseline, got '" + std::string(s) + "'");
}

MomentumForm parse_momentum_form(std::string_view s) {
  if (s == "damped") return MomentumForm::kDamped;
  if (s == "heavy_ball") return MomentumForm::kHeavyBall;
  throw std::invalid_argument("momentum must be one of damped|heavy_ball, got '" + std::string(s) + "'");
}

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be > 0");
}

}  // namespace

void SeekerParams::validate() const {
  require_positive(gamma_r, "gamma_r");
  require_positive(a_r, "a_r");
  require_positive(gamma_eta, "gamma_eta");
  require_positive(a_eta, "a_eta");
  require_positive(epsilon, "epsilon");
  require_positive(b_final, "b_final");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0,1)");
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in [0,1)");
  if (!std::isfinite(b0) || b0 > b_final) throw std::invalid_argument("b0 must be finite and <= b_final");
}

double exploration_radius(std::uint64_t k, const SeekerParams& p) {
  if (k == 0) throw std::invalid_argument("exploration_radius: k must be >= 1");
  return p.gamma_r * std::pow(static_cast<double>(k), -p.a_r);
}

double step_size(std::uint64_t k, const SeekerParams& p) {
  if (k == 0) throw std::invalid_argument("step_size: k must be >= 1");
  return p.gamma_eta * std::pow(static_cast<double>(k), -p.a_eta);
}

double box_bound(std::uint64_t k, const SeekerParams& p) {
  const double bk = std::pow(p.beta, static_cast<double>(k));
  return bk * p.b0 + (1.0 - bk) * p.b_final;
}

StateVec4 sample_unit_sphere(Rng& rng) {
  StateVec4 v;
  double n2 = 0.0;
  do {
    for (std::size_t i = 0; i < kStateDim; ++i) v[i] = rng.normal();
    n2 = v.squared_norm();
  } while (n2 == 0.0);
  return v * (1.0 / std::sqrt(n2));
}

StateVec4 gradient_estimate_residual(double h_now, double h_prev, double r_k, const StateVec4& zeta_k) {
  if (!(r_k > 0.0)) throw std::invalid_argument("gradient_estimate_residual: r_k must be > 0");
  return zeta_k * (kEstimatorDim / r_k * (h_now - h_prev));
}

StateVec4 gradient_estimate_onepoint(double h_now, double r_k, const StateVec4& zeta_k) {
  if (!(r_k > 0.0)) throw std::invalid_argument("gradient_estimate_onepoint: r_k must be > 0");
  return zeta_k * (kEstimatorDim / r_k * h_now);
}

StateVec4 project_box(const StateVec4& v, double bound) {
  if (bound < 0.0) throw std::invalid_argument("project_box: bound must be >= 0");
  StateVec4 out;
  for (std::size_t i = 0; i < kStateDim; ++i) out[i] = std::clamp(v[i], -bound, bound);
  return out;
}

StateVec4 update_mean(const SeekerState& state, const StateVec4& g, double eta_k, const SeekerParams& p,
                      std::uint64_t k) {
  // The step schedule is shared by both variants; the baseline only drops
  // the momentum term.
  const double gain = p.momentum == MomentumForm::kDamped ? (1.0 - p.rho) * eta_k : eta_k;
  const StateVec4 raw = state.mu - gain * g + p.effective_rho() * (state.mu - state.mu_prev);
  return project_box(raw, box_bound(k, p));
}

StepResult seeker_step(const SeekerState& state, double h_now, const SeekerParams& p, Rng& rng) {
  SeekerState next = state;
  next.k = state.k + 1;
  const std::uint64_t k = next.k;

  // g_{k−1} and η_{k−1}; at k = 1 the residual is zero by the bootstrap.
  StateVec4 g{};
  double eta = 0.0;
  if (k >= 2) {
    const double r_prev = exploration_radius(k - 1, p);
    eta = step_size(k - 1, p);
    g = p.variant == Variant::kFull ? gradient_estimate_residual(h_now, state.h_prev, r_prev, state.zeta_prev)
                                    : gradient_estimate_onepoint(h_now, r_prev, state.zeta_prev);
  }

  next.mu = update_mean(state, g, eta, p, k);
  next.mu_prev = state.mu;

  const StateVec4 zeta = sample_unit_sphere(rng);
  next.zeta_prev = zeta;
  next.h_prev = h_now;
  next.u_current = next.mu + exploration_radius(k, p) * zeta;
  return {next, next.u_current};
}

bool has_converged(double h_now, double h_prev, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("has_converged: epsilon must be > 0");
  return std::abs(h_now - h_prev) < epsilon;
}

}  // namespace pointing
