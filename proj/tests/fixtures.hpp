#pragma once

// Constructed 8-host bottleneck scenario shared by the scheduler, CLI, and
// acceptance suites: two access switches with four hosts each, three mice
// that drift a little, and one elephant that appears in the second epoch and
// pushes the bottleneck coefficient just under 1 (about 0.86 on 1 Gbps
// uplinks over a 4 s epoch).

#include <vector>

#include "hybsched/topology.hpp"
#include "hybsched/traffic_graph.hpp"

namespace fixture {

inline hybsched::Topology bottleneck_topology(double agg_uplink_bps = 1e9) {
  hybsched::Fig6Rates rates;
  rates.agg_uplink_bps = agg_uplink_bps;
  return hybsched::build_fig6_topology(4, 2, 4, rates);
}

inline std::vector<hybsched::TrafficSample> prev_samples() {
  return {
      {0, "h0", "h4", 2'000'000},
      {0, "h1", "h5", 3'000'000},
      {0, "h2", "h6", 1'000'000},
  };
}

inline std::vector<hybsched::TrafficSample> now_samples() {
  return {
      {1, "h0", "h4", 2'200'000},
      {1, "h1", "h5", 2'900'000},
      {1, "h2", "h6", 1'100'000},
      {1, "h3", "h7", 1'157'000'000},
  };
}

// Cut: two 1 Gbps uplinks over 4 s = 1e9 bytes; cross demand 1.1632e9 bytes.
inline constexpr double kExpectedH = 1e9 / 1.1632e9;

}  // namespace fixture
