#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tanglesim/engine.hpp"

namespace tanglesim {

/// (time, value) samples.
using Series = std::vector<std::pair<SimTime, double>>;

/// Mean tip count over honest nodes at each sample time.
[[nodiscard]] Series mean_honest_tips(const MetricsRecorder& metrics);

/// Least-squares slope of the samples with t0 <= time <= t1. NaN if fewer than
/// two samples fall in range.
[[nodiscard]] double lsq_slope(const Series& series, SimTime t0, SimTime t1);

/// Value of the last sample at or before `t`; NaN if none.
[[nodiscard]] double value_at(const Series& series, SimTime t);

/// Median and mean of the samples with t0 <= time <= t1.
[[nodiscard]] double median_in(const Series& series, SimTime t0, SimTime t1);
[[nodiscard]] double mean_in(const Series& series, SimTime t0, SimTime t1);

struct LatencyStats {
  std::size_t count = 0;
  double mean = 0.0;
  double max = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
};

/// Full-confirmation latency of blocks issued by honest nodes.
[[nodiscard]] LatencyStats latency_stats(const RunResult& result);

/// Linear-interpolated quantile of already sorted values; q in [0, 1].
[[nodiscard]] double quantile_sorted(const std::vector<double>& sorted, double q);

enum class RateKind { Dissemination, Confirmation };

/// Scaled rate of every node over (t0, t1].
[[nodiscard]] std::vector<double> scaled_rate(const RunResult& result, RateKind kind, SimTime t0,
                                              SimTime t1);

struct GroupSpread {
  std::string mode;
  std::size_t nodes = 0;
  double mean = 0.0;
  double cv = 0.0;  // population standard deviation / mean
};

/// Spread of the scaled rate across honest active nodes, one entry per mode
/// label (content, best_effort), in that order, skipping absent groups.
[[nodiscard]] std::vector<GroupSpread> scaled_rate_spread(const RunResult& result, RateKind kind,
                                                          SimTime t0, SimTime t1);

/// Mean scaled CR over honest active nodes, and over malicious nodes (NaN if
/// there are none), on (t0, t1].
[[nodiscard]] double honest_mean_scaled_cr(const RunResult& result, SimTime t0, SimTime t1);
[[nodiscard]] double malicious_mean_scaled_cr(const RunResult& result, SimTime t0, SimTime t1);

/// max/min of honest active scaled CR on (t0, t1]; infinite if some node is 0.
[[nodiscard]] double fairness_gap(const RunResult& result, SimTime t0, SimTime t1);

struct TipLaw {
  double mean_tips = 0.0;
  double mean_delay = 0.0;    // issue to tip-pool admission, seconds
  double arrival_rate = 0.0;  // admissions per second at one node
  double ratio = 0.0;         // mean_tips / (2 * mean_delay * arrival_rate)
};

/// Tip-pool law check averaged over honest nodes for samples in [t0, t1).
[[nodiscard]] TipLaw tip_law(const RunResult& result, SimTime t0, SimTime t1);

/// The headline numbers of one run.
struct RunSummary {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  double mean_tips_last_quarter = 0.0;
  double final_mean_tips = 0.0;
  double tip_slope_last_half = 0.0;
  double mean_latency = 0.0;
  double max_latency = 0.0;
  std::size_t fully_confirmed = 0;
  double honest_scaled_cr = 0.0;
  double malicious_scaled_cr = 0.0;
  double fairness_gap = 0.0;
  double tip_law_ratio = 0.0;
};

[[nodiscard]] RunSummary summarize(const RunResult& result);

/// Field names of RunSummary's numeric columns, in output order.
[[nodiscard]] const std::vector<std::string>& summary_columns();
[[nodiscard]] std::vector<double> summary_values(const RunSummary& s);

struct Aggregate {
  std::vector<double> mean;
  std::vector<double> ci95;  // half-width, Student t; 0 for a single run
};

[[nodiscard]] Aggregate aggregate(const std::vector<RunSummary>& runs);

}  // namespace tanglesim
