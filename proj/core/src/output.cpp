#include "tanglesim/output.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

#ifndef TANGLESIM_VERSION_STRING
#define TANGLESIM_VERSION_STRING "0.1.0"
#endif

namespace tanglesim {
namespace {

void write_file(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + file.string() + " for writing");
  out << content;
  if (!out) throw OutputError("failed writing " + file.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

std::string_view version() { return TANGLESIM_VERSION_STRING; }

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string rates_csv(const MetricsRecorder& metrics) {
  std::string out = "time,node,mode,rep,dr,cr,dr_scaled,cr_scaled\n";
  for (const auto& r : metrics.rates()) {
    out += format_number(r.time) + ',' + std::to_string(r.node.index) + ',' + r.mode + ',' +
           format_number(r.rep) + ',' + format_number(r.dr) + ',' + format_number(r.cr) + ',' +
           format_number(r.dr_scaled) + ',' + format_number(r.cr_scaled) + '\n';
  }
  return out;
}

std::string tips_csv(const MetricsRecorder& metrics) {
  std::string out = "time,node,tip_count\n";
  for (const auto& r : metrics.tips()) {
    out += format_number(r.time) + ',' + std::to_string(r.node.index) + ',' +
           std::to_string(r.tip_count) + '\n';
  }
  return out;
}

std::string latency_csv(const MetricsRecorder& metrics) {
  std::string out = "block,issuer,issue_time,full_confirm_time,latency\n";
  for (const auto& r : metrics.latency_rows()) {
    out += std::to_string(r.block.value) + ',' + std::to_string(r.issuer.index) + ',' +
           format_number(r.issue_time) + ',' + format_number(r.full_confirm_time) + ',' +
           format_number(r.latency) + '\n';
  }
  return out;
}

std::string drops_csv(const MetricsRecorder& metrics) {
  std::string out = "time,node,victim_issuer\n";
  for (const auto& r : metrics.drops()) {
    out += format_number(r.time) + ',' + std::to_string(r.node.index) + ',' +
           std::to_string(r.victim_issuer.index) + '\n';
  }
  return out;
}

std::string run_meta_json(const RunResult& result) {
  nlohmann::ordered_json meta;
  meta["config"] = nlohmann::ordered_json::parse(to_json(result.config, -1));
  meta["seed"] = result.seed;
  meta["run_index"] = result.run_index;
  meta["version"] = std::string(version());
  return meta.dump(2) + '\n';
}

std::string run_dir_name(std::size_t run_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%03zu", run_index);
  return buf;
}

void write_run(const RunResult& result, const std::filesystem::path& dir) {
  ensure_dir(dir);
  write_file(dir / "rates.csv", rates_csv(result.metrics));
  write_file(dir / "tips.csv", tips_csv(result.metrics));
  write_file(dir / "latency.csv", latency_csv(result.metrics));
  write_file(dir / "drops.csv", drops_csv(result.metrics));
  write_file(dir / "run_meta.json", run_meta_json(result));
}

std::string aggregate_csv(const std::vector<RunSummary>& runs) {
  std::string out = "row,seed";
  for (const auto& c : summary_columns()) out += ',' + c;
  out += '\n';
  for (const auto& r : runs) {
    out += std::to_string(r.run_index) + ',' + std::to_string(r.seed);
    for (const double v : summary_values(r)) out += ',' + format_number(v);
    out += '\n';
  }
  const Aggregate agg = aggregate(runs);
  out += "mean,";
  for (const double v : agg.mean) out += ',' + format_number(v);
  out += "\nci95,";
  for (const double v : agg.ci95) out += ',' + format_number(v);
  out += '\n';
  return out;
}

void write_aggregate(const std::vector<RunSummary>& runs, const std::filesystem::path& file) {
  if (file.has_parent_path()) ensure_dir(file.parent_path());
  write_file(file, aggregate_csv(runs));
}

}  // namespace tanglesim
