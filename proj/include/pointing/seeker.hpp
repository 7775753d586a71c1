#pragma once

#include <cstdint>
#include <string_view>

#include "pointing/rng.hpp"
#include "pointing/state.hpp"

namespace pointing {

/// `full` is the residual-feedback + momentum seeker; `baseline` drops both
/// (one-point estimator, no momentum) and keeps every schedule.
enum class Variant { kFull, kBaseline };

/// How the gradient term is scaled in the momentum update.
///
/// kDamped:    μ_k = Π(μ_{k−1} − (1−ρ)·η·g + ρ·(μ_{k−1} − μ_{k−2}))
/// kHeavyBall: μ_k = Π(μ_{k−1} − η·g + ρ·(μ_{k−1} − μ_{k−2}))
///
/// The two coincide for ρ = 0. The baseline drops the momentum term but keeps
/// the configured gradient gain, so both variants share one step schedule.
enum class MomentumForm { kDamped, kHeavyBall };

std::string_view to_string(Variant v);
std::string_view to_string(MomentumForm m);
Variant parse_variant(std::string_view s);
MomentumForm parse_momentum_form(std::string_view s);

/// Estimator scale factor: the per-player decision dimension.
inline constexpr double kEstimatorDim = static_cast<double>(kStateDim);

struct SeekerParams {
  double gamma_r = 0.58;
  double a_r = 0.2;
  double gamma_eta = 4.5;
  double a_eta = 0.5;
  double rho = 0.93;
  double beta = 0.01;
  double b_final = 4.5;
  double b0 = 0.3;
  double epsilon = 1e-6;
  Variant variant = Variant::kFull;
  MomentumForm momentum = MomentumForm::kDamped;

  /// Throws std::invalid_argument with a field-specific message.
  void validate() const;

  /// ρ actually used by the update (0 for the baseline).
  double effective_rho() const { return variant == Variant::kBaseline ? 0.0 : rho; }
};

struct SeekerState {
  StateVec4 mu{};         // μ_k
  StateVec4 mu_prev{};    // μ_{k−1}
  StateVec4 zeta_prev{};  // ζ_k, consumed by the next step's estimate
  double h_prev = 0.0;    // h(u_{k−1})
  StateVec4 u_current{};  // u_k
  std::uint64_t k = 0;
};

/// r_k = γ_r / k^{a_r}. Throws std::invalid_argument for k == 0.
double exploration_radius(std::uint64_t k, const SeekerParams& p);

/// η_k = γ_η / k^{a_η}. Throws std::invalid_argument for k == 0.
double step_size(std::uint64_t k, const SeekerParams& p);

/// b_k = β^k·b_0 + (1 − β^k)·b.
double box_bound(std::uint64_t k, const SeekerParams& p);

/// Uniform on the unit 3-sphere in R^4 (normalized Gaussian).
StateVec4 sample_unit_sphere(Rng& rng);

/// g = (4/r)·(h_now − h_prev)·ζ.
StateVec4 gradient_estimate_residual(double h_now, double h_prev, double r_k, const StateVec4& zeta_k);

/// g = (4/r)·h_now·ζ.
StateVec4 gradient_estimate_onepoint(double h_now, double r_k, const StateVec4& zeta_k);

/// Componentwise clamp to [−bound, bound].
StateVec4 project_box(const StateVec4& v, double bound);

/// Projected momentum update of the mean reference using state.mu (μ_{k−1})
/// and state.mu_prev (μ_{k−2}); `k` selects the box b_k.
StateVec4 update_mean(const SeekerState& state, const StateVec4& g, double eta_k, const SeekerParams& p,
                      std::uint64_t k);

struct StepResult {
  SeekerState state;
  StateVec4 u_next;
};

/// One iteration of the seeker. `h_now` is h^i(u_{k−1}) as observed this
/// iteration. On the first call (k: 0 → 1) the previous objective is
/// bootstrapped to h_now, so the first move is pure exploration.
StepResult seeker_step(const SeekerState& state, double h_now, const SeekerParams& p, Rng& rng);

/// Stopping test: |h_now − h_prev| < ε.
bool has_converged(double h_now, double h_prev, double epsilon);

}  // namespace pointing
