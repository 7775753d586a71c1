#include "pointing/config.hpp"

#include <fstream>
#include <iterator>
#include <functional>
#include <map>
#include <thread>

namespace pointing {

using nlohmann::json;

std::size_t RunConfig::worker_count() const {
  if (workers > 0) return static_cast<std::size_t>(workers);
  return std::max(1u, std::thread::hardware_concurrency());
}

bool operator==(const RunConfig& a, const RunConfig& b) { return to_json(a) == to_json(b); }

void RunConfig::validate() const {
  // Domain-type messages start with the field name; surface it as the key.
  auto named = [](const std::invalid_argument& e) {
    const std::string msg = e.what();
    const std::string head = msg.substr(0, msg.find_first_of(" /"));
    return ConfigError(head == "b_final" ? "b" : head, msg);
  };
  try {
    SeekerParams sp = seeker;
    sp.b0 = 0.0;  // derived per player at run time
    sp.validate();
    game().validate();
    plant.validate();
  } catch (const std::invalid_argument& e) {
    throw named(e);
  }
  if (!(uc_radius > 0.0)) throw ConfigError("uc_radius", "uc_radius must be > 0");
  if (w && !(*w > 0.0)) throw ConfigError("w", "w must be > 0");
  if (n_realizations < 1) throw ConfigError("realizations", "realizations must be >= 1");
  if (iterations < 1) throw ConfigError("iterations", "iterations must be >= 1");
  if (!(threshold > 0.0)) throw ConfigError("threshold", "threshold must be > 0");
  if (histogram_bins < 1) throw ConfigError("histogram_bins", "histogram_bins must be >= 1");
  if (output_dir.empty()) throw ConfigError("output", "output must not be empty");
}

json to_json(const RunConfig& c) {
  json j;
  j["gamma_r"] = c.seeker.gamma_r;
  j["a_r"] = c.seeker.a_r;
  j["gamma_eta"] = c.seeker.gamma_eta;
  j["a_eta"] = c.seeker.a_eta;
  j["rho"] = c.seeker.rho;
  j["beta"] = c.seeker.beta;
  j["b"] = c.seeker.b_final;
  j["epsilon"] = c.seeker.epsilon;
  j["variant"] = std::string(to_string(c.seeker.variant));
  j["momentum"] = std::string(to_string(c.seeker.momentum));
  j["uc_radius"] = c.uc_radius;
  j["w"] = c.w ? json(*c.w) : json(nullptr);
  j["tau_c"] = c.plant.tau_c;
  j["tau_g"] = c.plant.tau_g;
  j["realizations"] = c.n_realizations;
  j["iterations"] = c.iterations;
  j["seed"] = c.seed;
  j["output"] = c.output_dir;
  j["threshold"] = c.threshold;
  j["workers"] = c.workers;
  j["ideal_tracking"] = c.ideal_tracking;
  j["histogram_bins"] = c.histogram_bins;
  j["baseline_at"] = c.baseline_at == BaselineIteration::kFullTStar ? "full_t_star" : "own_t_star";
  return j;
}

namespace {

double as_number(const std::string& key, const json& v) {
  if (!v.is_number()) throw ConfigError(key, key + " must be a number");
  return v.get<double>();
}

std::uint64_t as_count(const std::string& key, const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) throw ConfigError(key, key + " must be a non-negative integer");
  throw ConfigError(key, key + " must be an integer");
}

std::string as_string(const std::string& key, const json& v) {
  if (!v.is_string()) throw ConfigError(key, key + " must be a string");
  return v.get<std::string>();
}

bool as_bool(const std::string& key, const json& v) {
  if (!v.is_boolean()) throw ConfigError(key, key + " must be true or false");
  return v.get<bool>();
}

using Setter = std::function<void(RunConfig&, const std::string&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"gamma_r", [](RunConfig& c, const std::string& k, const json& v) { c.seeker.gamma_r = as_number(k, v); }},
      {"a_r", [](RunConfig& c, const std::string& k, const json& v) { c.seeker.a_r = as_number(k, v); }},
      {"gamma_eta", [](RunConfig& c, const std::string& k, const json& v) { c.seeker.gamma_eta = as_number(k, v); }},
      {"a_eta", [](RunConfig& c, const std::string& k, const json& v) { c.seeker.a_eta = as_number(k, v); }},
      {"rho", [](RunConfig& c, const std::string& k, const json& v) { c.seeker.rho = as_number(k, v); }},
      {"beta", [](RunConfig& c, const std::string& k, const json& v) { c.seeker.beta = as_number(k, v); }},
      {"b", [](RunConfig& c, const std::string& k, const json& v) { c.seeker.b_final = as_number(k, v); }},
      {"epsilon", [](RunConfig& c, const std::string& k, const json& v) { c.seeker.epsilon = as_number(k, v); }},
      {"variant",
       [](RunConfig& c, const std::string& k, const json& v) {
         try {
           c.seeker.variant = parse_variant(as_string(k, v));
         } catch (const std::invalid_argument& e) {
           throw ConfigError(k, e.what());
         }
       }},
      {"momentum",
       [](RunConfig& c, const std::string& k, const json& v) {
         try {
           c.seeker.momentum = parse_momentum_form(as_string(k, v));
         } catch (const std::invalid_argument& e) {
           throw ConfigError(k, e.what());
         }
       }},
      {"uc_radius", [](RunConfig& c, const std::string& k, const json& v) { c.uc_radius = as_number(k, v); }},
      {"w",
       [](RunConfig& c, const std::string& k, const json& v) {
         if (v.is_null())
           c.w.reset();
         else
           c.w = as_number(k, v);
       }},
      {"tau_c", [](RunConfig& c, const std::string& k, const json& v) { c.plant.tau_c = as_number(k, v); }},
      {"tau_g", [](RunConfig& c, const std::string& k, const json& v) { c.plant.tau_g = as_number(k, v); }},
      {"realizations", [](RunConfig& c, const std::string& k, const json& v) { c.n_realizations = as_count(k, v); }},
      {"iterations", [](RunConfig& c, const std::string& k, const json& v) { c.iterations = as_count(k, v); }},
      {"seed", [](RunConfig& c, const std::string& k, const json& v) { c.seed = as_count(k, v); }},
      {"output", [](RunConfig& c, const std::string& k, const json& v) { c.output_dir = as_string(k, v); }},
      {"threshold", [](RunConfig& c, const std::string& k, const json& v) { c.threshold = as_number(k, v); }},
      {"workers", [](RunConfig& c, const std::string& k, const json& v) { c.workers = as_count(k, v); }},
      {"ideal_tracking", [](RunConfig& c, const std::string& k, const json& v) { c.ideal_tracking = as_bool(k, v); }},
      {"histogram_bins", [](RunConfig& c, const std::string& k, const json& v) { c.histogram_bins = as_count(k, v); }},
      {"baseline_at",
       [](RunConfig& c, const std::string& k, const json& v) {
         const std::string s = as_string(k, v);
         if (s == "full_t_star")
           c.baseline_at = BaselineIteration::kFullTStar;
         else if (s == "own_t_star")
           c.baseline_at = BaselineIteration::kOwnTStar;
         else
           throw ConfigError(k, "baseline_at must be one of full_t_star|own_t_star");
       }},
  };
  return table;
}

}  // namespace

RunConfig apply_json(RunConfig base, const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  const auto& table = setters();
  for (const auto& [key, value] : j.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key, "unknown config key '" + key + "'");
    it->second(base, key, value);
  }
  return base;
}

RunConfig parse_config(const std::optional<std::filesystem::path>& path, const ConfigOverrides& o) {
  RunConfig cfg;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError(path->string(), "cannot open config file '" + path->string() + "'");
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    // An empty document is a valid "all defaults" config.
    if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
      json j;
      try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
      } catch (const json::parse_error& e) {
        throw ConfigError(path->string(), "cannot parse config file '" + path->string() + "': " + e.what());
      }
      cfg = apply_json(cfg, j);
    }
  }
  if (o.n_realizations) cfg.n_realizations = *o.n_realizations;
  if (o.iterations) cfg.iterations = *o.iterations;
  if (o.seed) cfg.seed = *o.seed;
  if (o.variant) cfg = apply_json(cfg, json{{"variant", *o.variant}});
  if (o.workers) cfg.workers = *o.workers;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (o.threshold) cfg.threshold = *o.threshold;
  if (o.ideal_tracking) cfg.ideal_tracking = true;
  cfg.validate();
  return cfg;
}

}  // namespace pointing
