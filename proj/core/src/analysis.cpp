#include "tanglesim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace tanglesim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool active_honest(const NodeMode& m) {
  return !is_malicious(m) && !std::holds_alternative<Inactive>(m);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Two-sided 95% Student t quantiles for 1..30 degrees of freedom.
constexpr double kT95[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                           2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                           2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};

double t95(std::size_t dof) {
  if (dof == 0) return 0.0;
  if (dof <= 30) return kT95[dof - 1];
  return 1.96;
}

}  // namespace

Series mean_honest_tips(const MetricsRecorder& metrics) {
  Series out;
  const auto& rows = metrics.tips();
  std::size_t i = 0;
  while (i < rows.size()) {
    const SimTime t = rows[i].time;
    double sum = 0.0;
    std::size_t count = 0;
    for (; i < rows.size() && rows[i].time == t; ++i) {
      sum += static_cast<double>(rows[i].tip_count);
      ++count;
    }
    out.emplace_back(t, sum / static_cast<double>(count));
  }
  return out;
}

double lsq_slope(const Series& series, SimTime t0, SimTime t1) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [t, v] : series) {
    if (t < t0 || t > t1) continue;
    n += 1;
    sx += t;
    sy += v;
    sxx += t * t;
    sxy += t * v;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom == 0.0) return kNaN;
  return (n * sxy - sx * sy) / denom;
}

double value_at(const Series& series, SimTime t) {
  double out = kNaN;
  for (const auto& [time, v] : series) {
    if (time > t) break;
    out = v;
  }
  return out;
}

double median_in(const Series& series, SimTime t0, SimTime t1) {
  std::vector<double> v;
  for (const auto& [t, x] : series) {
    if (t >= t0 && t <= t1) v.push_back(x);
  }
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  return quantile_sorted(v, 0.5);
}

double mean_in(const Series& series, SimTime t0, SimTime t1) {
  std::vector<double> v;
  for (const auto& [t, x] : series) {
    if (t >= t0 && t <= t1) v.push_back(x);
  }
  return mean_of(v);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return kNaN;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

LatencyStats latency_stats(const RunResult& result) {
  std::vector<double> values;
  for (const auto& row : result.metrics.latency_rows()) {
    if (is_malicious(result.modes.at(row.issuer.index))) continue;
    values.push_back(row.latency);
  }
  LatencyStats s;
  s.count = values.size();
  if (values.empty()) {
    s.mean = s.max = s.p50 = s.p90 = s.p99 = kNaN;
    return s;
  }
  std::sort(values.begin(), values.end());
  s.mean = mean_of(values);
  s.max = values.back();
  s.p50 = quantile_sorted(values, 0.5);
  s.p90 = quantile_sorted(values, 0.9);
  s.p99 = quantile_sorted(values, 0.99);
  return s;
}

std::vector<double> scaled_rate(const RunResult& result, RateKind kind, SimTime t0, SimTime t1) {
  std::vector<double> out;
  for (const auto& row : result.metrics.scaled_rates(t1 - t0, t1)) {
    out.push_back(kind == RateKind::Dissemination ? row.dr_scaled : row.cr_scaled);
  }
  return out;
}

std::vector<GroupSpread> scaled_rate_spread(const RunResult& result, RateKind kind, SimTime t0,
                                            SimTime t1) {
  const auto rates = scaled_rate(result, kind, t0, t1);
  std::vector<GroupSpread> out;
  for (const char* label : {"content", "best_effort"}) {
    std::vector<double> v;
    for (std::size_t i = 0; i < rates.size(); ++i) {
      if (active_honest(result.modes[i]) && mode_label(result.modes[i]) == label) {
        v.push_back(rates[i]);
      }
    }
    if (v.empty()) continue;
    GroupSpread g;
    g.mode = label;
    g.nodes = v.size();
    g.mean = mean_of(v);
    double ss = 0.0;
    for (const double x : v) ss += (x - g.mean) * (x - g.mean);
    const double sd = std::sqrt(ss / static_cast<double>(v.size()));
    g.cv = g.mean > 0.0 ? sd / g.mean : kNaN;
    out.push_back(std::move(g));
  }
  return out;
}

double honest_mean_scaled_cr(const RunResult& result, SimTime t0, SimTime t1) {
  const auto rates = scaled_rate(result, RateKind::Confirmation, t0, t1);
  std::vector<double> v;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (active_honest(result.modes[i])) v.push_back(rates[i]);
  }
  return mean_of(v);
}

double malicious_mean_scaled_cr(const RunResult& result, SimTime t0, SimTime t1) {
  const auto rates = scaled_rate(result, RateKind::Confirmation, t0, t1);
  std::vector<double> v;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (is_malicious(result.modes[i])) v.push_back(rates[i]);
  }
  return mean_of(v);
}

double fairness_gap(const RunResult& result, SimTime t0, SimTime t1) {
  const auto rates = scaled_rate(result, RateKind::Confirmation, t0, t1);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!active_honest(result.modes[i])) continue;
    any = true;
    lo = std::min(lo, rates[i]);
    hi = std::max(hi, rates[i]);
  }
  if (!any) return kNaN;
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

TipLaw tip_law(const RunResult& result, SimTime t0, SimTime t1) {
  const MetricsRecorder& m = result.metrics;
  std::map<std::uint32_t, std::pair<double, std::size_t>> tips;  // node -> (sum, samples)
  for (const auto& row : m.tips()) {
    if (row.time < t0 || row.time >= t1) continue;
    auto& [sum, count] = tips[row.node.index];
    sum += static_cast<double>(row.tip_count);
    ++count;
  }
  double tips_sum = 0.0, rate_sum = 0.0, delay_sum = 0.0;
  std::size_t admitted = 0, nodes = 0;
  for (std::size_t i = 0; i < result.modes.size(); ++i) {
    const auto node = static_cast<std::uint32_t>(i);
    if (!m.honest(NodeId{node})) continue;
    const auto it = tips.find(node);
    if (it == tips.end() || it->second.second == 0) continue;
    const auto& buckets = m.admissions()[i];
    std::size_t count = 0;
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      const auto t = static_cast<double>(b);
      if (t < t0 || t >= t1) continue;
      count += buckets[b].count;
      delay_sum += buckets[b].delay_sum;
    }
    admitted += count;
    tips_sum += it->second.first / static_cast<double>(it->second.second);
    rate_sum += static_cast<double>(count) / (t1 - t0);
    ++nodes;
  }
  TipLaw law;
  if (nodes == 0 || admitted == 0) {
    law.mean_tips = law.mean_delay = law.arrival_rate = law.ratio = kNaN;
    return law;
  }
  law.mean_tips = tips_sum / static_cast<double>(nodes);
  law.arrival_rate = rate_sum / static_cast<double>(nodes);
  law.mean_delay = delay_sum / static_cast<double>(admitted);
  law.ratio = law.mean_tips / (2.0 * law.mean_delay * law.arrival_rate);
  return law;
}

RunSummary summarize(const RunResult& result) {
  const SimTime end = result.config.duration_s;
  const Series tips = mean_honest_tips(result.metrics);
  const LatencyStats lat = latency_stats(result);

  RunSummary s;
  s.run_index = result.run_index;
  s.seed = result.seed;
  s.mean_tips_last_quarter = mean_in(tips, 0.75 * end, end);
  s.final_mean_tips = value_at(tips, end);
  s.tip_slope_last_half = lsq_slope(tips, 0.5 * end, end);
  s.mean_latency = lat.mean;
  s.max_latency = lat.max;
  s.fully_confirmed = lat.count;
  if (end > 0.0) {
    s.honest_scaled_cr = honest_mean_scaled_cr(result, 0.5 * end, end);
    s.malicious_scaled_cr = malicious_mean_scaled_cr(result, 0.5 * end, end);
    s.fairness_gap = fairness_gap(result, 0.5 * end, end);
    s.tip_law_ratio = tip_law(result, 0.5 * end, end).ratio;
  } else {
    s.honest_scaled_cr = s.malicious_scaled_cr = s.fairness_gap = s.tip_law_ratio = kNaN;
  }
  return s;
}

const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> columns = {
      "mean_tips_last_quarter", "final_mean_tips",  "tip_slope_last_half", "mean_latency",
      "max_latency",            "fully_confirmed",  "honest_scaled_cr",    "malicious_scaled_cr",
      "fairness_gap",           "tip_law_ratio",
  };
  return columns;
}

std::vector<double> summary_values(const RunSummary& s) {
  return {s.mean_tips_last_quarter,
          s.final_mean_tips,
          s.tip_slope_last_half,
          s.mean_latency,
          s.max_latency,
          static_cast<double>(s.fully_confirmed),
          s.honest_scaled_cr,
          s.malicious_scaled_cr,
          s.fairness_gap,
          s.tip_law_ratio};
}

Aggregate aggregate(const std::vector<RunSummary>& runs) {
  const std::size_t cols = summary_columns().size();
  Aggregate agg;
  agg.mean.assign(cols, kNaN);
  agg.ci95.assign(cols, kNaN);
  if (runs.empty()) return agg;
  std::vector<std::vector<double>> values;
  values.reserve(runs.size());
  for (const auto& r : runs) values.push_back(summary_values(r));
  const auto n = static_cast<double>(runs.size());
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (const auto& v : values) sum += v[c];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& v : values) ss += (v[c] - mean) * (v[c] - mean);
    agg.mean[c] = mean;
    agg.ci95[c] = runs.size() < 2 ? 0.0 : t95(runs.size() - 1) * std::sqrt(ss / (n - 1)) / std::sqrt(n);
  }
  return agg;
}

}  // namespace tanglesim
