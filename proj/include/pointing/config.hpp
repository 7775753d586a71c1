#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pointing/dynamics.hpp"
#include "pointing/game.hpp"
#include "pointing/harness.hpp"
#include "pointing/seeker.hpp"

namespace pointing {

/// Raised for any configuration problem; `key()` names the offending field
/// (or the file, when it cannot be read).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Everything a run needs. Defaults reproduce the published experiment.
struct RunConfig {
  SeekerParams seeker;
  double uc_radius = 9.0;
  std::optional<double> w;  // unset: 1/uc_radius²
  PlantParams plant;

  std::uint64_t n_realizations = 1000;
  std::uint64_t iterations = 5000;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  double threshold = 1.0;
  std::uint64_t workers = 0;  // 0: hardware concurrency
  bool ideal_tracking = false;
  std::uint64_t histogram_bins = 30;
  BaselineIteration baseline_at = BaselineIteration::kFullTStar;

  double effective_w() const { return w.value_or(1.0 / (uc_radius * uc_radius)); }
  GameConfig game() const { return GameConfig{uc_radius, effective_w(), seeker.b_final}; }
  RunSettings settings() const { return RunSettings{iterations, threshold, ideal_tracking}; }
  SummaryOptions summary_options() const { return SummaryOptions{threshold, histogram_bins}; }
  std::size_t worker_count() const;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  friend bool operator==(const RunConfig& a, const RunConfig& b);
};

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<std::uint64_t> n_realizations;
  std::optional<std::uint64_t> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> variant;
  std::optional<std::uint64_t> workers;
  std::optional<std::string> output_dir;
  std::optional<double> threshold;
  bool ideal_tracking = false;
};

/// Config as a JSON object using the same keys the file format accepts.
nlohmann::json to_json(const RunConfig& cfg);

/// Applies the keys of `j` on top of `base`. Unknown keys and type mismatches
/// raise ConfigError. Does not validate.
RunConfig apply_json(RunConfig base, const nlohmann::json& j);

/// Defaults, then the file (if any), then overrides; validated.
RunConfig parse_config(const std::optional<std::filesystem::path>& path, const ConfigOverrides& overrides = {});

}  // namespace pointing
