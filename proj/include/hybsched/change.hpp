#pragma once

#include <map>

#include "hybsched/traffic_graph.hpp"

namespace hybsched {

/// Normalized traffic-change report between two epoch graphs. Each edge that
/// carries weight in either graph contributes |w - w1| / max(w, w1) in [0,1];
/// total_distance is the sum over those edges.
struct ChangeReport {
  double total_distance = 0.0;
  double max_term = 0.0;
  std::map<FlowId, double> per_edge;
  bool exceeded = false;
};

ChangeReport graph_distance(const TrafficGraph& g, const TrafficGraph& g1);

/// True when the summed distance strictly exceeds the acceptable change `val`.
/// The pipeline proceeds to bottleneck estimation only on true.
bool change_exceeds(const ChangeReport& report, double val);

}  // namespace hybsched
