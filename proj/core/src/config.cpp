#include "tanglesim/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "json.hpp"

namespace tanglesim {
namespace {

using nlohmann::json;

// Mode layout shared by all shipped presets, by reputation rank. Rank 5 (the
// sixth-highest reputation) is the slot the adversary takes.
constexpr std::size_t kAdversaryRank = 5;

}  // namespace

std::vector<NodeMode> default_mode_layout() {
  const char* layout[] = {
      "best_effort", "best_effort", "content", "best_effort", "content",
      "best_effort", "best_effort", "content", "best_effort", "content",
      "best_effort", "content",     "best_effort", "inactive", "content",
      "best_effort", "inactive",    "content",     "inactive", "inactive",
  };
  std::vector<NodeMode> modes;
  for (const char* m : layout) modes.push_back(parse_mode(m));
  return modes;
}

namespace {

const char* weight_mode_name(WeightMode m) {
  return m == WeightMode::Exact ? "exact" : "saturate";
}
const char* cone_search_name(ConeSearch s) {
  return s == ConeSearch::Exhaustive ? "exhaustive" : "prune";
}

json encode(const ScenarioConfig& c) {
  json modes = json::array();
  for (const auto& m : c.modes) modes.push_back(format_mode(m));
  return json{
      {"name", c.name},
      {"n", c.n},
      {"degree", c.degree},
      {"duration_s", c.duration_s},
      {"runs", c.runs},
      {"seed", c.seed},
      {"nu", c.nu},
      {"cw_threshold", c.cw_threshold},
      {"pct_threshold_s", c.pct_threshold_s},
      {"bfs_horizon_s", c.bfs_horizon_s},
      {"max_inbox", c.max_inbox},
      {"k_parents", c.k_parents},
      {"zipf_exponent", c.zipf_exponent},
      {"pct_enabled", c.pct_enabled},
      {"delay_min_s", c.delay_min_s},
      {"delay_max_s", c.delay_max_s},
      {"per_message_delay", c.per_message_delay},
      {"solidification_requests", c.solidification_requests},
      {"aimd",
       {{"update_period_s", c.aimd.update_period_s},
        {"alpha_fraction", c.aimd.alpha_fraction},
        {"beta", c.aimd.beta},
        {"congestion_threshold", c.aimd.congestion_threshold},
        {"floor_fraction", c.aimd.floor_fraction}}},
      {"metrics_sample_period_s", c.metrics_sample_period_s},
      {"rate_window_s", c.rate_window_s},
      {"modes", modes},
      {"weight_mode", weight_mode_name(c.weight_mode)},
      {"cone_search", cone_search_name(c.cone_search)},
  };
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& path) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path, std::string("wrong type (") + e.what() + ")");
  }
}

std::uint64_t get_count(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(path, "expected a non-negative integer, got " + v.dump());
  }
  return v.get<std::uint64_t>();
}

ScenarioConfig decode(const json& j) {
  ScenarioConfig c;
  c.name = get<std::string>(j, "name", "name");
  c.n = get_count(j, "n", "n");
  c.degree = get_count(j, "degree", "degree");
  c.duration_s = get<double>(j, "duration_s", "duration_s");
  c.runs = get_count(j, "runs", "runs");
  c.seed = get_count(j, "seed", "seed");
  c.nu = get<double>(j, "nu", "nu");
  c.cw_threshold = get_count(j, "cw_threshold", "cw_threshold");
  c.pct_threshold_s = get<double>(j, "pct_threshold_s", "pct_threshold_s");
  c.bfs_horizon_s = get<double>(j, "bfs_horizon_s", "bfs_horizon_s");
  c.max_inbox = get_count(j, "max_inbox", "max_inbox");
  c.k_parents = get_count(j, "k_parents", "k_parents");
  c.zipf_exponent = get<double>(j, "zipf_exponent", "zipf_exponent");
  c.pct_enabled = get<bool>(j, "pct_enabled", "pct_enabled");
  c.delay_min_s = get<double>(j, "delay_min_s", "delay_min_s");
  c.delay_max_s = get<double>(j, "delay_max_s", "delay_max_s");
  c.per_message_delay = get<bool>(j, "per_message_delay", "per_message_delay");
  c.solidification_requests = get<bool>(j, "solidification_requests", "solidification_requests");

  const json& a = j.at("aimd");
  c.aimd.update_period_s = get<double>(a, "update_period_s", "aimd.update_period_s");
  c.aimd.alpha_fraction = get<double>(a, "alpha_fraction", "aimd.alpha_fraction");
  c.aimd.beta = get<double>(a, "beta", "aimd.beta");
  c.aimd.congestion_threshold = get_count(a, "congestion_threshold", "aimd.congestion_threshold");
  c.aimd.floor_fraction = get<double>(a, "floor_fraction", "aimd.floor_fraction");

  c.metrics_sample_period_s = get<double>(j, "metrics_sample_period_s", "metrics_sample_period_s");
  c.rate_window_s = get<double>(j, "rate_window_s", "rate_window_s");

  const json& modes = j.at("modes");
  if (!modes.is_array()) throw ConfigError("modes", "expected an array of mode strings");
  c.modes.clear();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string path = "modes." + std::to_string(i);
    if (!modes[i].is_string()) throw ConfigError(path, "expected a mode string");
    try {
      c.modes.push_back(parse_mode(modes[i].get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  }

  const auto wm = get<std::string>(j, "weight_mode", "weight_mode");
  if (wm == "exact") {
    c.weight_mode = WeightMode::Exact;
  } else if (wm == "saturate") {
    c.weight_mode = WeightMode::SaturateConfirmed;
  } else {
    throw ConfigError("weight_mode", "expected 'exact' or 'saturate', got '" + wm + "'");
  }
  const auto cs = get<std::string>(j, "cone_search", "cone_search");
  if (cs == "exhaustive") {
    c.cone_search = ConeSearch::Exhaustive;
  } else if (cs == "prune") {
    c.cone_search = ConeSearch::PruneAtConfirmed;
  } else {
    throw ConfigError("cone_search", "expected 'exhaustive' or 'prune', got '" + cs + "'");
  }
  c.validate();
  return c;
}

// Merges `patch` into `base`, rejecting keys that base does not have.
void merge_known(json& base, const json& patch, const std::string& prefix) {
  if (!patch.is_object()) throw ConfigError(prefix, "expected an object");
  for (const auto& [key, value] : patch.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!base.contains(key)) throw ConfigError(path, "unknown key");
    if (base[key].is_object()) {
      merge_known(base[key], value, path);
    } else {
      base[key] = value;
    }
  }
}

json parse_value(std::string_view raw) {
  try {
    return json::parse(raw);
  } catch (const json::parse_error&) {
    return json(std::string(raw));
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be positive and finite");
  };
  if (n < 2) throw ConfigError("n", "need at least 2 nodes");
  if (degree == 0 || degree >= n) throw ConfigError("degree", "must be in [1, n)");
  if ((n * degree) % 2 != 0) throw ConfigError("degree", "n * degree must be even");
  if (!(duration_s >= 0.0) || !std::isfinite(duration_s)) {
    throw ConfigError("duration_s", "must be non-negative");
  }
  if (runs == 0) throw ConfigError("runs", "must be at least 1");
  positive(nu, "nu");
  if (cw_threshold == 0) throw ConfigError("cw_threshold", "must be positive");
  positive(pct_threshold_s, "pct_threshold_s");
  if (!(bfs_horizon_s > 0.0)) throw ConfigError("bfs_horizon_s", "must be positive");
  if (max_inbox == 0) throw ConfigError("max_inbox", "must be positive");
  if (k_parents < 1 || k_parents > 8) throw ConfigError("k_parents", "must be in [1, 8]");
  if (!(zipf_exponent >= 0.0)) throw ConfigError("zipf_exponent", "must be non-negative");
  if (!(delay_min_s >= 0.0)) throw ConfigError("delay_min_s", "must be non-negative");
  if (!(delay_max_s >= delay_min_s)) throw ConfigError("delay_max_s", "must be >= delay_min_s");
  positive(aimd.update_period_s, "aimd.update_period_s");
  if (!(aimd.alpha_fraction >= 0.0)) throw ConfigError("aimd.alpha_fraction", "must be >= 0");
  if (!(aimd.beta > 0.0 && aimd.beta < 1.0)) throw ConfigError("aimd.beta", "must be in (0, 1)");
  if (!(aimd.floor_fraction >= 0.0)) throw ConfigError("aimd.floor_fraction", "must be >= 0");
  positive(metrics_sample_period_s, "metrics_sample_period_s");
  positive(rate_window_s, "rate_window_s");
  if (modes.size() != n) {
    throw ConfigError("modes", "has " + std::to_string(modes.size()) + " entries for " +
                                   std::to_string(n) + " nodes");
  }
}

std::vector<std::string> preset_names() {
  return {"honest_baseline", "a1_spammer", "a2_multirate", "a3_no_pct"};
}

ScenarioConfig preset(std::string_view name) {
  ScenarioConfig c;
  c.name = std::string(name);
  if (name == "honest_baseline") {
    return c;
  }
  if (name == "a1_spammer") {
    c.modes[kAdversaryRank] = MaliciousSpammer{};
    return c;
  }
  if (name == "a2_multirate") {
    c.modes[kAdversaryRank] = MaliciousMultiRate{};
    return c;
  }
  if (name == "a3_no_pct") {
    c.modes[kAdversaryRank] = MaliciousMultiRate{};
    c.pct_enabled = false;
    return c;
  }
  throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

std::string to_json(const ScenarioConfig& config, int indent) { return encode(config).dump(indent); }

ScenarioConfig config_from_json(std::string_view text) {
  json input;
  try {
    input = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  // A run_meta.json echo wraps the config under "config".
  if (input.is_object() && input.contains("config") && input["config"].is_object()) {
    input = input["config"];
  }
  json base = encode(ScenarioConfig{});
  merge_known(base, input, "");
  return decode(base);
}

void apply_override(ScenarioConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError(std::string(assignment), "override must look like key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const json value = parse_value(assignment.substr(eq + 1));

  json doc = encode(config);
  json* cursor = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (cursor->is_object()) {
      if (!cursor->contains(part)) throw ConfigError(key, "unknown key");
      cursor = &(*cursor)[part];
    } else if (cursor->is_array()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw ConfigError(key, "expected an array index, got '" + part + "'");
      }
      if (idx >= cursor->size()) throw ConfigError(key, "index out of range");
      cursor = &(*cursor)[idx];
    } else {
      throw ConfigError(key, "unknown key");
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (cursor->is_object()) throw ConfigError(key, "cannot assign to a section");
  *cursor = value;
  config = decode(doc);
}

}  // namespace tanglesim
