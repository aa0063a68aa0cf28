#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tanglesim/analysis.hpp"
#include "tanglesim/engine.hpp"

namespace tanglesim {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Library version, git-describe style when built from a checkout.
[[nodiscard]] std::string_view version();

/// Six significant digits, printf %.6g.
[[nodiscard]] std::string format_number(double value);

// Column orders are fixed:
//   rates.csv    time,node,mode,rep,dr,cr,dr_scaled,cr_scaled
//   tips.csv     time,node,tip_count
//   latency.csv  block,issuer,issue_time,full_confirm_time,latency
//   drops.csv    time,node,victim_issuer
[[nodiscard]] std::string rates_csv(const MetricsRecorder& metrics);
[[nodiscard]] std::string tips_csv(const MetricsRecorder& metrics);
[[nodiscard]] std::string latency_csv(const MetricsRecorder& metrics);
[[nodiscard]] std::string drops_csv(const MetricsRecorder& metrics);

/// {"config": ..., "seed": ..., "run_index": ..., "version": ...}. The config
/// object can be fed back as a scenario.
[[nodiscard]] std::string run_meta_json(const RunResult& result);

/// "run_000", "run_001", ...
[[nodiscard]] std::string run_dir_name(std::size_t run_index);

/// Writes the four CSVs and run_meta.json into `dir`, creating it if needed.
void write_run(const RunResult& result, const std::filesystem::path& dir);

/// One row per run followed by "mean" and "ci95" rows.
[[nodiscard]] std::string aggregate_csv(const std::vector<RunSummary>& runs);
void write_aggregate(const std::vector<RunSummary>& runs, const std::filesystem::path& file);

}  // namespace tanglesim
