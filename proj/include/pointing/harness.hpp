#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pointing/dynamics.hpp"
#include "pointing/game.hpp"
#include "pointing/seeker.hpp"

namespace pointing {

/// Per-pair triple in (y12, y13, y23) order, or per-player (h1, h2, h3).
using Triple = std::array<double, 3>;

/// b_0^i = kInitialBoxGain·(1 − h^i(0)).
inline constexpr double kInitialBoxGain = 0.3;

/// Seconds per guidance iteration (16 s light travel + 1 s settling).
inline constexpr double kSecondsPerIteration = 17.0;

struct RunSettings {
  std::uint64_t iterations = 5000;  // K
  double threshold = 1.0;           // μrad, QPD field of view
  bool ideal_tracking = false;      // measure at u_{k−1} instead of the plant state
};

struct RealizationResult {
  std::uint64_t seed = 0;
  GroundTruth truth;
  /// Index k−1 holds what was measured at iteration k (from δx_k ≈ u_{k−1}).
  std::vector<Triple> y;
  std::vector<Triple> h;
  /// Misalignment of the mean references μ_{k−1} at the same index; this is
  /// what a seeker delivers once it stops exploring.
  std::vector<Triple> y_ref;
  /// First 1-based iteration with max-pair y below threshold.
  std::optional<std::uint64_t> converged_iter;
};

/// Runs one realization of the three-player game. params.b0 is replaced per
/// player by kInitialBoxGain·(1 − h^i(0)).
RealizationResult run_realization(std::uint64_t seed, const SeekerParams& params, const GameConfig& game,
                                  const PlantParams& plant, const RunSettings& settings);

/// Same, with the initial errors given instead of drawn from the seed.
RealizationResult run_realization(std::uint64_t seed, const GroundTruth& truth, const SeekerParams& params,
                                  const GameConfig& game, const PlantParams& plant, const RunSettings& settings);

/// Seed of realization `index` in a campaign with `base_seed`.
std::uint64_t realization_seed(std::uint64_t base_seed, std::uint64_t index);

struct TStar {
  std::uint64_t iter = 0;  // 0 when no realization converged
  std::vector<std::uint64_t> failed_seeds;
  bool all_converged() const { return failed_seeds.empty(); }
};

/// Max over realizations of the first iteration with max-pair y < threshold.
/// Non-converging realizations are excluded and listed in failed_seeds.
TStar compute_t_star(std::span<const RealizationResult> results, double threshold);

/// Nearest-rank percentile (p in (0, 100]) of `values`; reorders the input.
double percentile_nearest_rank(std::span<double> values, double p);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::array<std::vector<std::uint64_t>, 3> counts;  // per pair, one entry per bin
  std::array<std::uint64_t, 3> overflow{};           // values >= hi
};

struct CampaignSummary {
  std::uint64_t n_realizations = 0;
  std::uint64_t iterations = 0;
  std::uint64_t t_star_iter = 0;
  double t_star_minutes = 0.0;
  std::vector<std::uint64_t> failed_seeds;
  Triple mean_at_t_star{};            // measured misalignment
  Triple reference_mean_at_t_star{};  // misalignment of μ
  double max_misalignment_at_t_star = 0.0;
  std::vector<Triple> p10, p50, p90;  // per iteration, measured misalignment
  Histogram histogram;                // measured misalignment at t*
};

struct SummaryOptions {
  double threshold = 1.0;
  std::size_t histogram_bins = 30;
};

/// Aggregates results at 1-based iteration `t_star` (clamped to [1, K]).
CampaignSummary summarize(std::span<const RealizationResult> results, std::uint64_t t_star,
                          const SummaryOptions& opts = {});

/// Per-pair means at a 1-based iteration.
Triple mean_misalignment_at(std::span<const RealizationResult> results, std::uint64_t iter);
Triple mean_reference_misalignment_at(std::span<const RealizationResult> results, std::uint64_t iter);

struct Campaign {
  std::vector<RealizationResult> results;
  CampaignSummary summary;
};

/// Runs `n` realizations on `workers` threads. Output does not depend on the
/// worker count.
Campaign run_campaign(std::uint64_t n, std::uint64_t base_seed, const SeekerParams& params,
                      const GameConfig& game, const PlantParams& plant, const RunSettings& settings,
                      std::size_t workers, const SummaryOptions& opts = {});

enum class BaselineIteration { kFullTStar, kOwnTStar };

struct Table1 {
  std::uint64_t full_iter = 0;
  std::uint64_t baseline_iter = 0;
  Triple full{};                // reference misalignment means
  Triple baseline{};
  Triple full_measured{};       // measured misalignment means
  Triple baseline_measured{};
};

/// Paired comparison of a full and a baseline campaign run on identical seeds.
Table1 compare_variants(const Campaign& full, const Campaign& baseline, BaselineIteration at);

}  // namespace pointing
