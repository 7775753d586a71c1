// Command-line front end for the pointing-acquisition NE seeker.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "pointing/config.hpp"
#include "pointing/harness.hpp"
#include "pointing/output.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitNotConverged = 3;

using namespace pointing;

void print_summary(const char* label, const CampaignSummary& s) {
  std::cout << label << ": realizations=" << s.n_realizations << " K=" << s.iterations
            << " t*=" << s.t_star_iter << " it (" << format_real(s.t_star_minutes) << " min)"
            << " mean_ref@t*=[" << s.reference_mean_at_t_star[0] << ", " << s.reference_mean_at_t_star[1]
            << ", " << s.reference_mean_at_t_star[2] << "] μrad"
            << " mean_measured@t*=[" << s.mean_at_t_star[0] << ", " << s.mean_at_t_star[1] << ", "
            << s.mean_at_t_star[2] << "] μrad\n";
}

bool report_failures(const char* label, const CampaignSummary& s) {
  if (s.failed_seeds.empty()) return true;
  std::cerr << "WARNING: " << label << ": " << s.failed_seeds.size()
            << " realization(s) never reached the threshold within K; excluded from t*. Seeds:";
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < std::min(kShown, s.failed_seeds.size()); ++i) std::cerr << ' ' << s.failed_seeds[i];
  if (s.failed_seeds.size() > kShown) std::cerr << " ... (full list in the summary)";
  std::cerr << '\n';
  return false;
}

Campaign campaign_for(const RunConfig& cfg) {
  return run_campaign(cfg.n_realizations, cfg.seed, cfg.seeker, cfg.game(), cfg.plant, cfg.settings(),
                      cfg.worker_count(), cfg.summary_options());
}

int cmd_run(const RunConfig& cfg) {
  const Campaign c = campaign_for(cfg);
  emit_results(c, cfg, cfg.output_dir);
  print_summary(std::string(to_string(cfg.seeker.variant)).c_str(), c.summary);
  return report_failures("run", c.summary) ? kExitOk : kExitNotConverged;
}

int cmd_single(const RunConfig& base) {
  RunConfig cfg = base;
  cfg.n_realizations = 1;
  const Campaign c = campaign_for(cfg);
  const auto& r = c.results.front();
  std::cout << "seed " << r.seed << " truth";
  for (const auto& v : r.truth.delta_x0)
    std::cout << " (" << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << v[3] << ')';
  std::cout << "\niteration y12 y13 y23 h1 h2 h3\n";
  for (std::size_t k = 0; k < r.y.size(); ++k) {
    std::cout << k + 1;
    for (double v : r.y[k]) std::cout << ' ' << v;
    for (double v : r.h[k]) std::cout << ' ' << v;
    std::cout << '\n';
  }
  emit_results(c, cfg, cfg.output_dir);
  print_summary("single", c.summary);
  return report_failures("single", c.summary) ? kExitOk : kExitNotConverged;
}

int cmd_ablate(const RunConfig& base) {
  RunConfig full_cfg = base;
  full_cfg.seeker.variant = Variant::kFull;
  RunConfig base_cfg = base;
  base_cfg.seeker.variant = Variant::kBaseline;

  const Campaign full = campaign_for(full_cfg);
  const Campaign baseline = campaign_for(base_cfg);
  const Table1 table = compare_variants(full, baseline, base.baseline_at);

  emit_results(full, full_cfg, base.output_dir);
  emit_results(baseline, base_cfg, base.output_dir, "_baseline");
  emit_table1(table, base.output_dir);

  print_summary("full", full.summary);
  print_summary("baseline", baseline.summary);
  std::cout << "pair  full@" << table.full_iter << "  baseline@" << table.baseline_iter << "  ratio\n";
  const char* names[] = {"y12", "y13", "y23"};
  for (std::size_t p = 0; p < 3; ++p)
    std::cout << names[p] << "  " << table.full[p] << "  " << table.baseline[p] << "  "
              << table.baseline[p] / table.full[p] << '\n';
  report_failures("baseline", baseline.summary);
  return report_failures("full", full.summary) ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual-feedback momentum NE seeking for three-spacecraft pointing acquisition"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  ConfigOverrides o;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--realizations", o.n_realizations, "Number of Monte-Carlo realizations");
  app.add_option("--iterations", o.iterations, "Iterations per realization (K)");
  app.add_option("--seed", o.seed, "Base seed");
  app.add_option("--variant", o.variant, "full|baseline");
  app.add_option("--workers", o.workers, "Worker threads (0: all cores)");
  app.add_option("--output", o.output_dir, "Output directory");
  app.add_option("--threshold", o.threshold, "Convergence threshold in μrad");
  app.add_flag("--ideal-tracking", o.ideal_tracking, "Measure at the commanded reference, bypassing the plant");

  auto* run = app.add_subcommand("run", "Run a Monte-Carlo campaign");
  auto* single = app.add_subcommand("single", "Run one realization with a per-iteration log");
  auto* ablate = app.add_subcommand("ablate", "Paired full-vs-baseline campaign on identical seeds");
  auto* validate = app.add_subcommand("validate", "Check the configuration and print it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    cfg = parse_config(config_path ? std::optional<std::filesystem::path>(*config_path) : std::nullopt, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error [" << e.key() << "]: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*validate) {
      std::cout << to_json(cfg).dump(2) << '\n';
      return kExitOk;
    }
    if (*run) return cmd_run(cfg);
    if (*single) return cmd_single(cfg);
    if (*ablate) return cmd_ablate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
