#pragma once

#include <string>
#include <vector>

#include "hybsched/flow.hpp"
#include "hybsched/sim.hpp"

namespace hybsched {

/// Flow-stats CSV: header `epoch,src,dst,bytes`, one sample per row, LF line
/// endings, bytes as base-10 integers. Parse errors name the file and line.
std::vector<TrafficSample> read_flow_stats_csv(const std::string& path);
void write_flow_stats_csv(const std::string& path, const std::vector<TrafficSample>& samples);

/// Per-epoch metrics export:
/// `strategy,seed,epoch,throughput_bps,config_delay_ms,stability,offloaded`.
void write_metrics_csv(const std::string& path, const ExperimentResults& results);

/// One row per strategy with metric means across its seeds.
void write_summary_csv(const std::string& path, const ExperimentResults& results);

}  // namespace hybsched
