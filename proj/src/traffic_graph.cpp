#include "hybsched/traffic_graph.hpp"

#include <cmath>

namespace hybsched {

void TrafficGraph::set_weight(const NodeId& u, const NodeId& v, double w) {
  FlowId f(u, v);
  nodes_.insert(u);
  nodes_.insert(v);
  if (w < 0.0) throw Error(Errc::invalid_config, "negative edge weight on " + f.str());
  if (w == 0.0) {
    edges_.erase(f);
  } else {
    edges_[f] = w;
  }
}

double TrafficGraph::weight(const NodeId& u, const NodeId& v) const {
  if (u == v) return 0.0;
  return weight(FlowId(u, v));
}

double TrafficGraph::weight(const FlowId& f) const {
  auto it = edges_.find(f);
  return it == edges_.end() ? 0.0 : it->second;
}

std::vector<NodeId> TrafficGraph::neighbors(const NodeId& u) const {
  std::vector<NodeId> out;
  for (const auto& [f, w] : edges_) {
    if (f.contains(u)) out.push_back(f.other(u));
  }
  return out;  // edges_ is ordered, so the result is sorted
}

double TrafficGraph::total_weight() const {
  double t = 0.0;
  for (const auto& [f, w] : edges_) t += w;
  return t;
}

TrafficGraph build_graph(const std::vector<TrafficSample>& samples, std::uint64_t epoch) {
  // Accumulate in integer space first; CSV ingestion is exact.
  std::map<FlowId, std::uint64_t> acc;
  for (const auto& s : samples) {
    if (s.src == s.dst) {
      throw Error(Errc::self_loop, "sample with src = dst = " + s.src);
    }
    if (s.epoch != epoch) {
      throw Error(Errc::invalid_config, "sample epoch mismatch: expected " +
                                            std::to_string(epoch) + ", got " +
                                            std::to_string(s.epoch));
    }
    acc[FlowId(s.src, s.dst)] += s.bytes;
  }
  TrafficGraph g;
  for (const auto& [f, bytes] : acc) {
    if (bytes == 0) continue;  // zero-sum pairs are absent edges
    g.set_weight(f.a(), f.b(), static_cast<double>(bytes));
  }
  return g;
}

double weighted_degree(const TrafficGraph& g, const NodeId& u) {
  if (!g.has_node(u)) throw Error(Errc::not_found, "unknown node " + u);
  double d = 0.0;
  for (const auto& [f, w] : g.edges()) {
    if (f.contains(u)) d += w;
  }
  return d;
}

double cut_weight(const TrafficGraph& g, const std::set<NodeId>& s) {
  if (s.empty()) throw Error(Errc::invalid_partition, "cut set is empty");
  std::size_t inside = 0;
  for (const auto& n : s) {
    if (g.has_node(n)) ++inside;
  }
  if (inside == g.node_count()) {
    throw Error(Errc::invalid_partition, "cut set covers the whole graph");
  }
  double c = 0.0;
  for (const auto& [f, w] : g.edges()) {
    bool ina = s.count(f.a()) != 0;
    bool inb = s.count(f.b()) != 0;
    if (ina != inb) c += w;
  }
  return c;
}

TrafficGraph induced_subgraph(const TrafficGraph& g, const std::set<NodeId>& keep) {
  TrafficGraph sub;
  for (const auto& n : keep) sub.add_node(n);
  for (const auto& [f, w] : g.edges()) {
    if (keep.count(f.a()) && keep.count(f.b())) sub.set_weight(f.a(), f.b(), w);
  }
  return sub;
}

}  // namespace hybsched
