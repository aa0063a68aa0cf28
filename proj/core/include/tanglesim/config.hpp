#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tanglesim/dag.hpp"
#include "tanglesim/node_mode.hpp"
#include "tanglesim/rate_setter.hpp"

namespace tanglesim {

/// Invalid scenario input. `key()` names the offending config key (dotted).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Default node modes by reputation rank for 20 nodes; the shipped presets
/// place the adversary at rank index 5.
std::vector<NodeMode> default_mode_layout();

struct ScenarioConfig {
  std::string name = "custom";
  std::size_t n = 20;
  std::size_t degree = 4;
  double duration_s = 800.0;
  std::size_t runs = 10;
  std::uint64_t seed = 1;

  double nu = 20.0;
  std::uint64_t cw_threshold = 25;
  double pct_threshold_s = 25.0;
  double bfs_horizon_s = 80.0;
  std::size_t max_inbox = 200;
  std::size_t k_parents = 2;
  double zipf_exponent = 0.9;
  bool pct_enabled = true;

  double delay_min_s = 0.05;
  double delay_max_s = 0.15;
  /// Draw a fresh delay per message instead of once per link.
  bool per_message_delay = false;
  /// Ask the sending neighbor for parents that are missing locally.
  bool solidification_requests = true;

  AimdParams aimd;

  double metrics_sample_period_s = 1.0;
  double rate_window_s = 10.0;

  /// Node modes by reputation rank (index 0 has the highest reputation).
  std::vector<NodeMode> modes = default_mode_layout();

  WeightMode weight_mode = WeightMode::SaturateConfirmed;
  ConeSearch cone_search = ConeSearch::PruneAtConfirmed;

  /// Throws ConfigError naming the first invalid key.
  void validate() const;
};

/// Names of the shipped presets.
std::vector<std::string> preset_names();

/// Throws ConfigError (key "preset") for unknown names.
ScenarioConfig preset(std::string_view name);

/// JSON encoding. Every field is written; parsing accepts any subset of keys
/// on top of the defaults and rejects unknown keys.
std::string to_json(const ScenarioConfig& config, int indent = 2);
ScenarioConfig config_from_json(std::string_view text);

/// Applies "dotted.key=value" to a config. The value is parsed as JSON when
/// possible and as a bare string otherwise (e.g. modes.5=spammer:10).
void apply_override(ScenarioConfig& config, std::string_view assignment);

}  // namespace tanglesim
