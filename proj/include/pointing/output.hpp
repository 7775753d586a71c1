#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pointing/config.hpp"
#include "pointing/harness.hpp"

namespace pointing {

/// Version tag folded into the run fingerprint.
inline constexpr const char* kCodeVersion = "pointing-ne 1.0.0";

/// I/O failure; message includes the path.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decimal text with 17 significant digits, enough to round-trip any double.
std::string format_real(double v);

/// Header: realization,iteration,y12,y13,y23,h1,h2,h3
void write_traces_csv(std::ostream& out, std::span<const RealizationResult> results);

/// Header: pair,full,baseline,full_measured,baseline_measured,full_iter,baseline_iter
void write_table1_csv(std::ostream& out, const Table1& table);

/// Hex FNV-1a over the code version and the canonical config dump.
std::string fingerprint(const RunConfig& cfg);

nlohmann::json summary_to_json(const CampaignSummary& s, const RunConfig& cfg);

/// Writes traces.csv and summary.json (with `suffix` before the extension,
/// e.g. "_baseline"), creating `dir` if needed.
void emit_results(const Campaign& campaign, const RunConfig& cfg, const std::filesystem::path& dir,
                  const std::string& suffix = "");

void emit_table1(const Table1& table, const std::filesystem::path& dir);

}  // namespace pointing
