// Acceptance suite: one PASS/FAIL line per criterion; exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "estimator_oracle.hpp"
#include "euler_oracle.hpp"
#include <json.hpp>

#include "pointing/harness.hpp"

namespace fs = std::filesystem;
using namespace pointing;

namespace {

// Tolerances and bands.
constexpr std::uint64_t kTStarLo = 120, kTStarHi = 280;
constexpr double kFullMeanLo = 0.02, kFullMeanHi = 0.3;
constexpr double kBaselineMeanLo = 1.5, kBaselineMeanHi = 9.0;
constexpr double kMinRatio = 10.0;
constexpr double kEstimatorRelTol = 0.05;
constexpr std::size_t kEstimatorSamples = 1000000;
constexpr std::size_t kVarianceSamples = 100000;
constexpr double kBootstrapAlpha = 0.01;
constexpr double kManifoldTol = 1e-12;
constexpr double kEulerRelTol = 1e-9;
constexpr double kTrackingRelTol = 1e-6;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

std::string triple(const Triple& t) {
  std::ostringstream os;
  os.precision(4);
  os << "(" << t[0] << ", " << t[1] << ", " << t[2] << ")";
  return os.str();
}

int run_cli(const std::string& args);
std::string slurp(const fs::path& p);

// Table-1 rows from the ablate output: pair -> (full, baseline, full_iter, baseline_iter).
struct Table1Row {
  double full = 0, baseline = 0, full_measured = 0, baseline_measured = 0;
  std::uint64_t full_iter = 0, baseline_iter = 0;
};

std::vector<Table1Row> read_table1(const fs::path& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  std::vector<Table1Row> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) continue;
    rows.push_back({std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4]),
                    std::stoull(cells[5]), std::stoull(cells[6])});
  }
  return rows;
}

void campaign_criteria() {
  const fs::path out = fs::temp_directory_path() / "pointing_acceptance_campaign";
  fs::remove_all(out);
  const auto t0 = std::chrono::steady_clock::now();
  const int code = run_cli(std::string("ablate --config ") + POINTING_DEFAULT_CONFIG + " --output " + out.string());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!fs::exists(out / "summary.json") || !fs::exists(out / "table1.csv")) {
    report(false, "campaign reproduction", "ablate produced no output (exit " + std::to_string(code) + ")");
    report(false, "Table-1 magnitude", "ablate produced no output");
    return;
  }
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  const auto rows = read_table1(out / "table1.csv");
  fs::remove(out / "traces.csv");
  fs::remove(out / "traces_baseline.csv");

  {
    const auto t_star = summary["t_star_iter"].get<std::uint64_t>();
    const bool ok = code == 0 && summary["all_converged"].get<bool>() && summary["n_realizations"] == 1000 &&
                    summary["iterations"] == 5000 && t_star >= kTStarLo && t_star <= kTStarHi;
    std::ostringstream os;
    os << summary["n_realizations"] << " realizations x K=" << summary["iterations"]
       << ", non-converged=" << summary["failed_seeds"].size() << ", t*=" << t_star << " it ("
       << summary["t_star_minutes"].get<double>() << " min; band [" << kTStarLo << ", " << kTStarHi
       << "]), worst y at t*=" << summary["max_misalignment_at_t_star"].get<double>() << ", ablate wall time "
       << secs << " s";
    report(ok, "campaign reproduction", os.str());
  }
  {
    bool ok = rows.size() == 3;
    Triple full{}, base{}, ratio{}, full_meas{}, base_meas{};
    std::uint64_t full_iter = 0;
    for (std::size_t p = 0; p < rows.size() && p < 3; ++p) {
      const auto& r = rows[p];
      full[p] = r.full;
      base[p] = r.baseline;
      ratio[p] = r.baseline / r.full;
      full_meas[p] = r.full_measured;
      base_meas[p] = r.baseline_measured;
      full_iter = r.full_iter;
      ok = ok && r.baseline_iter == r.full_iter && r.full_iter == summary["t_star_iter"].get<std::uint64_t>();
      ok = ok && r.full >= kFullMeanLo && r.full <= kFullMeanHi;
      ok = ok && r.baseline >= kBaselineMeanLo && r.baseline <= kBaselineMeanHi;
      ok = ok && ratio[p] > kMinRatio;
    }
    std::ostringstream os;
    os << "at t*=" << full_iter << ": full " << triple(full) << " in [" << kFullMeanLo << ", " << kFullMeanHi
       << "], baseline " << triple(base) << " in [" << kBaselineMeanLo << ", " << kBaselineMeanHi << "], ratio "
       << triple(ratio) << " > " << kMinRatio
       << " (mean-reference misalignment; measured incl. exploration: full " << triple(full_meas) << ", baseline "
       << triple(base_meas) << ")";
    report(ok, "Table-1 magnitude", os.str());
  }
}

void estimator_criterion() {
  const oracle::QuadraticFixture f;
  const StateVec4 fd = oracle::smoothed_gradient_fd(f, 200000, 1e-2, 11);
  const auto s = oracle::draw_estimates(f, kEstimatorSamples, 12);
  const double rel = (oracle::mean(s.residual) - fd).norm() / fd.norm();

  const auto v = oracle::draw_estimates(f, kVarianceSamples, 13);
  const double var_res = oracle::total_variance(v.residual);
  const double var_one = oracle::total_variance(v.onepoint);
  const double gap_lo = oracle::bootstrap_variance_gap_lower(v, 1000, kBootstrapAlpha, 14);

  std::ostringstream os;
  os << "rel. error of residual mean vs FD of smoothed objective = " << rel << " (< " << kEstimatorRelTol
     << ", N=" << kEstimatorSamples << "); Var residual=" << var_res << " < Var one-point=" << var_one
     << ", bootstrap 1% lower bound of gap=" << gap_lo;
  report(rel < kEstimatorRelTol && var_res < var_one && gap_lo > 0.0, "estimator unbiasedness", os.str());
}

void manifold_criterion() {
  GameConfig cfg;
  Rng rng(21);
  std::mt19937_64 g(22);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const GroundTruth t = sample_initial_conditions(rng, cfg.uc_radius);
    StateVec4 c;
    for (auto& x : c.c) x = shift(g);
    JointVec u = t.delta_x0;
    for (auto& x : u) x += c;
    for (std::size_t i = 0; i < kPlayers; ++i) worst = std::max(worst, objective(i, u, t, cfg));
  }

  const GroundTruth t = sample_initial_conditions(rng, cfg.uc_radius);
  std::uniform_real_distribution<double> d(-9.0, 9.0);
  int violations = 0;
  for (int n = 0; n < 10000; ++n) {
    JointVec u;
    for (auto& x : u)
      for (auto& v : x.c) v = d(g);
    const std::size_t i = static_cast<std::size_t>(n % 3);
    StateVec4 a, b;
    for (std::size_t k = 0; k < 4; ++k) {
      a[k] = d(g);
      b[k] = d(g);
    }
    u[i] = a;
    const double ha = objective(i, u, t, cfg);
    u[i] = b;
    const double hb = objective(i, u, t, cfg);
    u[i] = 0.5 * (a + b);
    if (objective(i, u, t, cfg) > 0.5 * ha + 0.5 * hb + 1e-12) ++violations;
  }
  std::ostringstream os;
  os << "max objective on shifted manifold = " << worst << " (<= " << kManifoldTol
     << ", 100 truths); midpoint-convexity violations = " << violations << " / 10000";
  report(worst <= kManifoldTol && violations == 0, "NE-manifold property", os.str());
}

void dynamics_criterion() {
  const PlantParams p;
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> d(-9.0, 9.0);
  double worst_euler = 0.0, worst_track = 0.0;
  for (int n = 0; n < 100; ++n) {
    PlantState s;
    JointVec u;
    for (std::size_t i = 0; i < kPlayers; ++i)
      for (std::size_t k = 0; k < 4; ++k) {
        s.delta_x[i][k] = d(g);
        u[i][k] = d(g);
      }
    const PlantState next = plant_step(s, u, p);
    const JointVec euler = oracle::euler_plant(s.delta_x, u, p, 10000);
    const double scale = oracle::stacked_norm(s.delta_x) + oracle::stacked_norm(u);
    worst_euler = std::max(worst_euler, oracle::stacked_norm(oracle::diff(next.delta_x, euler)) / scale);
    const double offset = oracle::stacked_norm(oracle::diff(s.delta_x, u));
    worst_track = std::max(worst_track, tracking_residual(next, u) / offset);
  }
  std::ostringstream os;
  os << "max Euler(1e4 substeps) deviation relative to input scale = " << worst_euler << " (< " << kEulerRelTol
     << "); max one-period tracking residual / offset = " << worst_track << " (< " << kTrackingRelTol << ")";
  report(worst_euler < kEulerRelTol && worst_track < kTrackingRelTol, "dynamics exactness", os.str());
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(POINTING_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism_criterion() {
  const fs::path work = fs::temp_directory_path() / "pointing_acceptance";
  fs::remove_all(work);
  const std::string common =
      std::string("--config ") + POINTING_DEFAULT_CONFIG + " --realizations 20 --iterations 600 --seed 77";
  bool ok = true;
  std::ostringstream os;
  for (const std::string sub : {"run", "single", "ablate"}) {
    const fs::path a = work / (sub + "_w1"), b = work / (sub + "_w8");
    const int ca = run_cli(sub + " " + common + " --workers 1 --output " + a.string());
    const int cb = run_cli(sub + " " + common + " --workers 8 --output " + b.string());
    bool same = ca == cb && (ca == 0 || ca == 3) && fs::exists(a / "traces.csv") &&
                slurp(a / "traces.csv") == slurp(b / "traces.csv");
    if (sub == "ablate")
      same = same && fs::exists(a / "traces_baseline.csv") &&
             slurp(a / "traces_baseline.csv") == slurp(b / "traces_baseline.csv") &&
             slurp(a / "table1.csv") == slurp(b / "table1.csv");
    os << sub << "=" << (same ? "identical" : "DIFFERENT") << " ";
    ok = ok && same;
  }
  os << "(traces.csv, workers 1 vs 8)";
  report(ok, "determinism", os.str());
}

}  // namespace

int main() {
  manifold_criterion();
  dynamics_criterion();
  estimator_criterion();
  determinism_criterion();
  campaign_criteria();
  std::cout << (failures == 0 ? "ALL ACCEPTANCE CRITERIA PASSED" : "SOME ACCEPTANCE CRITERIA FAILED") << std::endl;
  return failures;
}
