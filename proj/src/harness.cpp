#include "pointing/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pointing {

std::uint64_t realization_seed(std::uint64_t base_seed, std::uint64_t index) {
  return derive_seed(base_seed, index);
}

RealizationResult run_realization(std::uint64_t seed, const SeekerParams& params, const GameConfig& game,
                                  const PlantParams& plant, const RunSettings& settings) {
  Rng truth_rng(derive_seed(seed, 0));
  const GroundTruth truth = sample_initial_conditions(truth_rng, game.uc_radius);
  return run_realization(seed, truth, params, game, plant, settings);
}

RealizationResult run_realization(std::uint64_t seed, const GroundTruth& truth, const SeekerParams& params,
                                  const GameConfig& game, const PlantParams& plant, const RunSettings& settings) {
  if (settings.iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  RealizationResult out;
  out.seed = seed;
  out.truth = truth;

  std::array<Rng, kPlayers> player_rng{Rng(derive_seed(seed, 1)), Rng(derive_seed(seed, 2)),
                                       Rng(derive_seed(seed, 3))};
  std::array<SeekerParams, kPlayers> player_params;
  const Triple y0 = pairwise_misalignments(JointVec{}, out.truth);
  for (std::size_t i = 0; i < kPlayers; ++i) {
    player_params[i] = params;
    player_params[i].b0 = kInitialBoxGain * (1.0 - objective_from_misalignments(i, y0, game.w));
  }

  std::array<SeekerState, kPlayers> seekers{};
  PlantState plant_state;  // δx starts at u_0 = 0
  JointVec u{};

  const std::uint64_t K = settings.iterations;
  out.y.reserve(K);
  out.h.reserve(K);
  out.y_ref.reserve(K);

  for (std::uint64_t k = 1; k <= K; ++k) {
    const JointVec& measured_at = settings.ideal_tracking ? u : plant_state.delta_x;
    const Triple y = pairwise_misalignments(measured_at, out.truth);
    Triple h{};
    for (std::size_t i = 0; i < kPlayers; ++i) h[i] = objective_from_misalignments(i, y, game.w);

    JointVec mu;
    for (std::size_t i = 0; i < kPlayers; ++i) mu[i] = seekers[i].mu;
    out.y.push_back(y);
    out.h.push_back(h);
    out.y_ref.push_back(pairwise_misalignments(mu, out.truth));

    if (!out.converged_iter && std::max({y[0], y[1], y[2]}) < settings.threshold) out.converged_iter = k;

    for (std::size_t i = 0; i < kPlayers; ++i) {
      auto step = seeker_step(seekers[i], h[i], player_params[i], player_rng[i]);
      seekers[i] = step.state;
      u[i] = step.u_next;
    }
    plant_state = plant_step(plant_state, u, plant);
  }
  return out;
}

TStar compute_t_star(std::span<const RealizationResult> results, double threshold) {
  TStar ts;
  for (const auto& r : results) {
    // Recomputed from the trace so any threshold can be queried.
    std::optional<std::uint64_t> first;
    for (std::size_t k = 0; k < r.y.size(); ++k) {
      const auto& y = r.y[k];
      if (std::max({y[0], y[1], y[2]}) < threshold) {
        first = k + 1;
        break;
      }
    }
    if (first)
      ts.iter = std::max(ts.iter, *first);
    else
      ts.failed_seeds.push_back(r.seed);
  }
  return ts;
}

double percentile_nearest_rank(std::span<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile of empty set");
  if (!(p > 0.0 && p <= 100.0)) throw std::invalid_argument("percentile must lie in (0, 100]");
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  auto nth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

namespace {

std::uint64_t clamp_iter(std::span<const RealizationResult> results, std::uint64_t iter) {
  if (results.empty()) throw std::invalid_argument("no realizations");
  const std::uint64_t K = results.front().y.size();
  return std::clamp<std::uint64_t>(iter, 1, K);
}

Triple mean_of(std::span<const RealizationResult> results, std::uint64_t iter,
               std::vector<Triple> RealizationResult::*field) {
  const std::uint64_t k = clamp_iter(results, iter) - 1;
  Triple sum{};
  for (const auto& r : results)
    for (std::size_t p = 0; p < 3; ++p) sum[p] += (r.*field)[k][p];
  for (auto& s : sum) s /= static_cast<double>(results.size());
  return sum;
}

}  // namespace

Triple mean_misalignment_at(std::span<const RealizationResult> results, std::uint64_t iter) {
  return mean_of(results, iter, &RealizationResult::y);
}

Triple mean_reference_misalignment_at(std::span<const RealizationResult> results, std::uint64_t iter) {
  return mean_of(results, iter, &RealizationResult::y_ref);
}

CampaignSummary summarize(std::span<const RealizationResult> results, std::uint64_t t_star,
                          const SummaryOptions& opts) {
  if (opts.histogram_bins == 0) throw std::invalid_argument("histogram_bins must be >= 1");
  CampaignSummary s;
  s.n_realizations = results.size();
  s.iterations = results.empty() ? 0 : results.front().y.size();
  if (results.empty()) return s;

  const std::uint64_t ts = clamp_iter(results, t_star);
  s.t_star_iter = ts;
  s.t_star_minutes = static_cast<double>(ts) * kSecondsPerIteration / 60.0;
  s.mean_at_t_star = mean_misalignment_at(results, ts);
  s.reference_mean_at_t_star = mean_reference_misalignment_at(results, ts);

  s.histogram.lo = 0.0;
  s.histogram.hi = opts.threshold;
  for (auto& c : s.histogram.counts) c.assign(opts.histogram_bins, 0);
  const double width = opts.threshold / static_cast<double>(opts.histogram_bins);
  for (const auto& r : results) {
    const Triple& y = r.y[ts - 1];
    s.max_misalignment_at_t_star = std::max({s.max_misalignment_at_t_star, y[0], y[1], y[2]});
    for (std::size_t p = 0; p < 3; ++p) {
      if (y[p] >= opts.threshold) {
        ++s.histogram.overflow[p];
        continue;
      }
      auto bin = static_cast<std::size_t>(y[p] / width);
      s.histogram.counts[p][std::min(bin, opts.histogram_bins - 1)]++;
    }
  }

  s.p10.resize(s.iterations);
  s.p50.resize(s.iterations);
  s.p90.resize(s.iterations);
  std::vector<double> column(results.size());
  for (std::uint64_t k = 0; k < s.iterations; ++k) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t r = 0; r < results.size(); ++r) column[r] = results[r].y[k][p];
      s.p10[k][p] = percentile_nearest_rank(column, 10.0);
      s.p50[k][p] = percentile_nearest_rank(column, 50.0);
      s.p90[k][p] = percentile_nearest_rank(column, 90.0);
    }
  }
  return s;
}

Campaign run_campaign(std::uint64_t n, std::uint64_t base_seed, const SeekerParams& params,
                      const GameConfig& game, const PlantParams& plant, const RunSettings& settings,
                      std::size_t workers, const SummaryOptions& opts) {
  if (n < 1) throw std::invalid_argument("n_realizations must be >= 1");
  Campaign c;
  c.results.resize(n);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::uint64_t i = next++; i < n; i = next++) {
      try {
        c.results[i] = run_realization(realization_seed(base_seed, i), params, game, plant, settings);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, static_cast<std::size_t>(n));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  const TStar ts = compute_t_star(c.results, settings.threshold);
  SummaryOptions o = opts;
  o.threshold = settings.threshold;
  c.summary = summarize(c.results, ts.iter == 0 ? settings.iterations : ts.iter, o);
  c.summary.failed_seeds = ts.failed_seeds;
  return c;
}

Table1 compare_variants(const Campaign& full, const Campaign& baseline, BaselineIteration at) {
  Table1 t;
  t.full_iter = full.summary.t_star_iter;
  t.baseline_iter = at == BaselineIteration::kFullTStar ? full.summary.t_star_iter : baseline.summary.t_star_iter;
  t.full = mean_reference_misalignment_at(full.results, t.full_iter);
  t.full_measured = mean_misalignment_at(full.results, t.full_iter);
  t.baseline = mean_reference_misalignment_at(baseline.results, t.baseline_iter);
  t.baseline_measured = mean_misalignment_at(baseline.results, t.baseline_iter);
  return t;
}

}  // namespace pointing
