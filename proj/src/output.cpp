#include "pointing/output.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <system_error>

namespace pointing {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 3> kPairNames{"y12", "y13", "y23"};

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw OutputError("write failed for '" + path.string() + "'");
}

json per_pair(const Triple& t) { return json{{"y12", t[0]}, {"y13", t[1]}, {"y23", t[2]}}; }

json curve(const std::vector<Triple>& c) {
  json j;
  for (std::size_t p = 0; p < 3; ++p) {
    json arr = json::array();
    for (const auto& t : c) arr.push_back(t[p]);
    j[kPairNames[p]] = std::move(arr);
  }
  return j;
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw OutputError("number formatting failed");
  return std::string(buf.data(), end);
}

void write_traces_csv(std::ostream& out, std::span<const RealizationResult> results) {
  out << "realization,iteration,y12,y13,y23,h1,h2,h3\n";
  std::string line;
  for (std::size_t r = 0; r < results.size(); ++r) {
    const auto& res = results[r];
    for (std::size_t k = 0; k < res.y.size(); ++k) {
      line.clear();
      line += std::to_string(r);
      line += ',';
      line += std::to_string(k + 1);
      for (double v : res.y[k]) {
        line += ',';
        line += format_real(v);
      }
      for (double v : res.h[k]) {
        line += ',';
        line += format_real(v);
      }
      line += '\n';
      out << line;
    }
  }
}

void write_table1_csv(std::ostream& out, const Table1& t) {
  out << "pair,full,baseline,full_measured,baseline_measured,full_iter,baseline_iter\n";
  for (std::size_t p = 0; p < 3; ++p) {
    out << kPairNames[p] << ',' << format_real(t.full[p]) << ',' << format_real(t.baseline[p]) << ','
        << format_real(t.full_measured[p]) << ',' << format_real(t.baseline_measured[p]) << ',' << t.full_iter
        << ',' << t.baseline_iter << '\n';
  }
}

std::string fingerprint(const RunConfig& cfg) {
  const std::string text = std::string(kCodeVersion) + '\n' + to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + 16, h, 16);
  std::string hex(buf.data(), end);
  return std::string(16 - hex.size(), '0') + hex;
}

json summary_to_json(const CampaignSummary& s, const RunConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["variant"] = std::string(to_string(cfg.seeker.variant));
  j["n_realizations"] = s.n_realizations;
  j["iterations"] = s.iterations;
  j["threshold_murad"] = cfg.threshold;
  j["t_star_iter"] = s.t_star_iter;
  j["t_star_minutes"] = s.t_star_minutes;
  j["all_converged"] = s.failed_seeds.empty();
  j["failed_seeds"] = s.failed_seeds;
  j["mean_at_t_star"] = per_pair(s.mean_at_t_star);
  j["reference_mean_at_t_star"] = per_pair(s.reference_mean_at_t_star);
  j["max_misalignment_at_t_star"] = s.max_misalignment_at_t_star;
  j["percentiles"] = json{{"method", "nearest_rank"}, {"p10", curve(s.p10)}, {"p50", curve(s.p50)},
                          {"p90", curve(s.p90)}};
  json hist{{"lo", s.histogram.lo}, {"hi", s.histogram.hi}, {"bins", s.histogram.counts[0].size()}};
  json overflow;
  for (std::size_t p = 0; p < 3; ++p) {
    hist[kPairNames[p]] = s.histogram.counts[p];
    overflow[kPairNames[p]] = s.histogram.overflow[p];
  }
  hist["overflow"] = overflow;
  j["histogram"] = std::move(hist);
  j["config"] = to_json(cfg);
  j["fingerprint"] = fingerprint(cfg);
  return j;
}

void emit_results(const Campaign& campaign, const RunConfig& cfg, const std::filesystem::path& dir,
                  const std::string& suffix) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const auto traces_path = dir / ("traces" + suffix + ".csv");
  auto traces = open_for_write(traces_path);
  write_traces_csv(traces, campaign.results);
  finish(traces, traces_path);

  const auto summary_path = dir / ("summary" + suffix + ".json");
  auto summary = open_for_write(summary_path);
  summary << summary_to_json(campaign.summary, cfg).dump(1) << '\n';
  finish(summary, summary_path);
}

void emit_table1(const Table1& table, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto path = dir / "table1.csv";
  auto out = open_for_write(path);
  write_table1_csv(out, table);
  finish(out, path);
}

}  // namespace pointing
