#include "hybsched/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace hybsched {

namespace {

enum class Side { none, source, destination };

// Assigns every topology node to the nearer anchor set (hop distance, ties to
// the source side) so "links crossing the cut" is well defined even when the
// split names hosts only.
std::map<NodeId, Side> extend_over_topology(const Topology& topo, const std::set<NodeId>& s,
                                            const std::set<NodeId>& d) {
  auto bfs = [&](const std::set<NodeId>& anchors) {
    std::map<NodeId, int> dist;
    std::deque<NodeId> q;
    for (const auto& n : anchors) {
      if (topo.has_node(n)) {
        dist[n] = 0;
        q.push_back(n);
      }
    }
    while (!q.empty()) {
      NodeId n = q.front();
      q.pop_front();
      for (const auto& m : topo.neighbors(n)) {
        if (!dist.count(m)) {
          dist[m] = dist[n] + 1;
          q.push_back(m);
        }
      }
    }
    return dist;
  };
  auto ds = bfs(s);
  auto dd = bfs(d);
  std::map<NodeId, Side> side;
  const int inf = std::numeric_limits<int>::max();
  for (const auto& n : topo.nodes()) {
    int a = ds.count(n.id) ? ds[n.id] : inf;
    int b = dd.count(n.id) ? dd[n.id] : inf;
    side[n.id] = (a <= b) ? Side::source : Side::destination;
  }
  for (const auto& n : s) side[n] = Side::source;
  for (const auto& n : d) side[n] = Side::destination;
  return side;
}

struct RatioParts {
  double cut_capacity_bytes = 0.0;
  double demand_src = 0.0;
  double demand_dst = 0.0;
};

RatioParts partition_parts(const TrafficGraph& g, const Topology& topo, const Bipartition& part,
                           double epoch_seconds) {
  if (part.sources.empty() || part.destinations.empty()) {
    throw Error(Errc::invalid_partition, "both sides of the bipartition must be nonempty");
  }
  for (const auto& n : part.sources) {
    if (part.destinations.count(n)) {
      throw Error(Errc::invalid_partition, "node " + n + " is on both sides");
    }
    if (!topo.has_node(n)) throw Error(Errc::not_found, "source node " + n + " not in topology");
  }
  for (const auto& n : part.destinations) {
    if (!topo.has_node(n)) {
      throw Error(Errc::not_found, "destination node " + n + " not in topology");
    }
  }
  auto side = extend_over_topology(topo, part.sources, part.destinations);
  RatioParts parts;
  // Capacity of the packet network across the split; idle circuit capacity
  // does not make the packet network feasible.
  for (const auto& l : topo.links()) {
    if (l.kind == LinkKind::epn && side.at(l.a) != side.at(l.b)) {
      parts.cut_capacity_bytes += l.capacity_bps * epoch_seconds / 8.0;
    }
  }
  // Cross-cut demand per side: degree terms count only edges whose other
  // endpoint sits on the opposite side.
  for (const auto& [f, w] : g.edges()) {
    auto sa = side.count(f.a()) ? side.at(f.a()) : Side::none;
    auto sb = side.count(f.b()) ? side.at(f.b()) : Side::none;
    if (sa == sb) continue;
    if (part.sources.count(f.a()) || part.sources.count(f.b())) parts.demand_src += w;
    if (part.destinations.count(f.a()) || part.destinations.count(f.b())) parts.demand_dst += w;
  }
  return parts;
}

}  // namespace

Bipartition default_bipartition(const std::vector<TrafficSample>& samples, const TrafficGraph& g,
                                const Topology& topo) {
  std::map<NodeId, double> originated, sunk;
  for (const auto& s : samples) {
    originated[s.src] += static_cast<double>(s.bytes);
    sunk[s.dst] += static_cast<double>(s.bytes);
  }
  Bipartition part;
  for (const auto& n : g.nodes()) {
    double out = originated.count(n) ? originated[n] : 0.0;
    double in = sunk.count(n) ? sunk[n] : 0.0;
    if (out > in) part.sources.insert(n);
    else part.destinations.insert(n);
  }
  if (part.sources.empty() || part.destinations.empty()) return default_bipartition(g, topo);
  return part;
}

Bipartition default_bipartition(const TrafficGraph& g, const Topology& topo) {
  if (g.node_count() < 2) {
    throw Error(Errc::no_traffic, "need at least two traffic nodes to split");
  }
  // Group traffic nodes by attachment point so switch-local hosts stay on one
  // side and the split cuts through the aggregation fabric.
  std::map<NodeId, std::vector<NodeId>> groups;
  std::map<NodeId, double> group_volume;
  for (const auto& n : g.nodes()) {
    NodeId key = n;
    if (topo.has_node(n) && topo.kind_of(n) == NodeKind::host) {
      try {
        key = topo.access_switch_of(n);
      } catch (const Error&) {
      }
    }
    groups[key].push_back(n);
    group_volume[key] += weighted_degree(g, n);
  }
  std::vector<NodeId> keys;
  for (const auto& [key, members] : groups) keys.push_back(key);
  if (keys.size() < 2) {
    // Everything hangs off one switch; fall back to a per-node split.
    groups.clear();
    group_volume.clear();
    keys.clear();
    for (const auto& n : g.nodes()) {
      groups[n] = {n};
      group_volume[n] = weighted_degree(g, n);
      keys.push_back(n);
    }
  }
  std::stable_sort(keys.begin(), keys.end(), [&](const NodeId& x, const NodeId& y) {
    if (group_volume[x] != group_volume[y]) return group_volume[x] > group_volume[y];
    return x < y;
  });
  Bipartition part;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto& side = i % 2 == 0 ? part.sources : part.destinations;
    for (const auto& n : groups[keys[i]]) side.insert(n);
  }
  return part;
}

BottleneckVerdict estimate_h(const TrafficGraph& g, const Topology& topo, const Bipartition& part,
                             double epoch_seconds) {
  if (epoch_seconds <= 0.0) throw Error(Errc::invalid_config, "epoch length must be > 0");
  auto parts = partition_parts(g, topo, part, epoch_seconds);
  double denom = std::max(parts.demand_src, parts.demand_dst);
  if (denom <= 0.0) {
    throw Error(Errc::no_traffic, "no traffic incident on either side of the split");
  }
  BottleneckVerdict v;
  v.h = parts.cut_capacity_bytes / denom;
  v.bottleneck = v.h < 1.0;
  return v;
}

double exact_cheeger(const TrafficGraph& g, const Topology& topo, double epoch_seconds) {
  const auto& nodes = g.nodes();
  std::size_t n = nodes.size();
  if (n > 20) {
    throw Error(Errc::too_large, "exact bottleneck limited to 20 nodes, got " +
                                     std::to_string(n));
  }
  if (g.edge_count() == 0) throw Error(Errc::no_traffic, "graph carries no traffic");
  std::vector<NodeId> order(nodes.begin(), nodes.end());
  double best = std::numeric_limits<double>::infinity();
  // First node pinned to the source side; unordered partitions are symmetric.
  std::uint64_t combos = 1ULL << (n - 1);
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    Bipartition part;
    part.sources.insert(order[0]);
    for (std::size_t i = 1; i < n; ++i) {
      if (mask & (1ULL << (i - 1))) part.sources.insert(order[i]);
      else part.destinations.insert(order[i]);
    }
    if (part.destinations.empty()) continue;
    auto parts = partition_parts(g, topo, part, epoch_seconds);
    double denom = std::max(parts.demand_src, parts.demand_dst);
    if (denom <= 0.0) continue;  // nothing crosses, not a bottleneck candidate
    best = std::min(best, parts.cut_capacity_bytes / denom);
  }
  if (!std::isfinite(best)) {
    throw Error(Errc::no_traffic, "no bipartition carries cross traffic");
  }
  return best;
}

}  // namespace hybsched
