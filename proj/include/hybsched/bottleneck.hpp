#pragma once

#include <set>
#include <vector>

#include "hybsched/topology.hpp"
#include "hybsched/traffic_graph.hpp"

namespace hybsched {

/// Source/destination split the bottleneck coefficient is evaluated on.
struct Bipartition {
  std::set<NodeId> sources;
  std::set<NodeId> destinations;
};

struct BottleneckVerdict {
  double h = 0.0;
  bool bottleneck = false;  // h < 1
};

/// Observed split of the epoch's traffic nodes: sources are the nodes that
/// originated strictly more bytes than they sank. Under a perfect bijection
/// every node nets to zero, so the fallback groups hosts by their access
/// switch (a node with no switch is its own group) and deals the groups onto
/// alternating sides by descending traffic volume; this keeps switch-local
/// hosts together and puts the cut across the aggregation fabric.
Bipartition default_bipartition(const std::vector<TrafficSample>& samples, const TrafficGraph& g,
                                const Topology& topo);
Bipartition default_bipartition(const TrafficGraph& g, const Topology& topo);

/// Bottleneck coefficient on one split: cut capacity (bytes deliverable per
/// epoch across the partition) over the larger side's cross-cut demand.
/// Topology nodes outside the split side with their nearest anchor set.
BottleneckVerdict estimate_h(const TrafficGraph& g, const Topology& topo, const Bipartition& part,
                             double epoch_seconds);

/// Exact bottleneck coefficient: minimum of the estimate ratio over every
/// nonempty proper bipartition of the traffic nodes. Exponential; refuses
/// graphs above 20 nodes.
double exact_cheeger(const TrafficGraph& g, const Topology& topo, double epoch_seconds);

}  // namespace hybsched
