#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "hybsched/flow.hpp"

namespace hybsched {

/// Weighted undirected graph of per-epoch traffic volumes. Edges carry the
/// total bytes exchanged between their endpoints; an absent edge means zero
/// traffic. Immutable once built; self-loops are rejected at the FlowId level.
class TrafficGraph {
 public:
  TrafficGraph() = default;

  void add_node(const NodeId& n) { nodes_.insert(n); }

  /// Sets the symmetric weight of {u,v}. Zero erases the edge; endpoints stay.
  void set_weight(const NodeId& u, const NodeId& v, double w);

  bool has_node(const NodeId& n) const { return nodes_.count(n) != 0; }
  double weight(const NodeId& u, const NodeId& v) const;
  double weight(const FlowId& f) const;

  const std::set<NodeId>& nodes() const noexcept { return nodes_; }
  const std::map<FlowId, double>& edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  /// Neighbors of u (endpoints of positive-weight edges at u), sorted.
  std::vector<NodeId> neighbors(const NodeId& u) const;

  double total_weight() const;

 private:
  std::set<NodeId> nodes_;
  std::map<FlowId, double> edges_;
};

/// Aggregates samples of one epoch into the undirected traffic graph;
/// bytes for (u,v) and (v,u) land on the same edge.
TrafficGraph build_graph(const std::vector<TrafficSample>& samples, std::uint64_t epoch);

/// Sum of edge weights incident to u.
double weighted_degree(const TrafficGraph& g, const NodeId& u);

/// Sum of weights over edges with exactly one endpoint in s.
double cut_weight(const TrafficGraph& g, const std::set<NodeId>& s);

/// Subgraph induced on `keep` (nodes kept even when isolated there).
TrafficGraph induced_subgraph(const TrafficGraph& g, const std::set<NodeId>& keep);

}  // namespace hybsched
