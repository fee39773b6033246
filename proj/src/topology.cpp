#include "hybsched/topology.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <limits>

#include "hybsched/rng.hpp"

namespace hybsched {

const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::host: return "host";
    case NodeKind::access_switch: return "access_switch";
    case NodeKind::electrical_agg: return "electrical_agg";
    case NodeKind::optical_agg: return "optical_agg";
  }
  return "host";
}

const char* link_kind_name(LinkKind k) { return k == LinkKind::epn ? "epn" : "ocn"; }

NodeKind node_kind_from(const std::string& s) {
  if (s == "host") return NodeKind::host;
  if (s == "access_switch") return NodeKind::access_switch;
  if (s == "electrical_agg") return NodeKind::electrical_agg;
  if (s == "optical_agg") return NodeKind::optical_agg;
  throw Error(Errc::parse, "unknown node kind: " + s);
}

LinkKind link_kind_from(const std::string& s) {
  if (s == "epn") return LinkKind::epn;
  if (s == "ocn") return LinkKind::ocn;
  throw Error(Errc::parse, "unknown link kind: " + s);
}

void Topology::add_node(const NodeId& id, NodeKind kind) {
  if (index_.count(id)) throw Error(Errc::invalid_config, "duplicate node id " + id);
  index_[id] = nodes_.size();
  nodes_.push_back({id, kind});
}

void Topology::add_link(const NodeId& a, const NodeId& b, double capacity_bps, LinkKind kind,
                        int wavelengths) {
  if (!has_node(a) || !has_node(b)) {
    throw Error(Errc::not_found, "link endpoint missing: " + a + " or " + b);
  }
  FlowId key(a, b);
  if (link_index_.count(key)) throw Error(Errc::invalid_config, "duplicate link " + key.str());
  if (capacity_bps <= 0.0) throw Error(Errc::invalid_config, "link capacity must be > 0");
  if (kind == LinkKind::ocn && wavelengths < 1) {
    throw Error(Errc::invalid_config, "ocn link " + key.str() + " needs wavelengths >= 1");
  }
  link_index_[key] = links_.size();
  links_.push_back({a, b, capacity_bps, kind, kind == LinkKind::ocn ? wavelengths : 0});
}

NodeKind Topology::kind_of(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(Errc::not_found, "unknown node " + id);
  return nodes_[it->second].kind;
}

const TopoLink* Topology::link_between(const NodeId& a, const NodeId& b) const {
  if (a == b) return nullptr;
  auto it = link_index_.find(FlowId(a, b));
  return it == link_index_.end() ? nullptr : &links_[it->second];
}

std::vector<NodeId> Topology::neighbors(const NodeId& n, std::optional<LinkKind> kind) const {
  std::vector<NodeId> out;
  for (const auto& l : links_) {
    if (kind && l.kind != *kind) continue;
    if (l.a == n) out.push_back(l.b);
    else if (l.b == n) out.push_back(l.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Topology::connected() const {
  if (nodes_.empty()) return true;
  std::set<NodeId> seen{nodes_.front().id};
  std::deque<NodeId> q{nodes_.front().id};
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop_front();
    for (const auto& m : neighbors(n)) {
      if (seen.insert(m).second) q.push_back(m);
    }
  }
  return seen.size() == nodes_.size();
}

NodeId Topology::access_switch_of(const NodeId& host) const {
  if (kind_of(host) != NodeKind::host) {
    throw Error(Errc::invalid_config, host + " is not a host");
  }
  auto nb = neighbors(host);
  for (const auto& n : nb) {
    if (kind_of(n) == NodeKind::access_switch) return n;
  }
  throw Error(Errc::invalid_config, "host " + host + " has no access switch");
}

Topology build_fig6_topology(int hosts_per_switch, int access_switches, int wavelengths,
                             const Fig6Rates& rates) {
  if (hosts_per_switch < 1 || access_switches < 1 || wavelengths < 1) {
    throw Error(Errc::invalid_config, "fig6 topology counts must be >= 1");
  }
  if (access_switches > rates.electrical_agg_ports) {
    throw Error(Errc::capacity_plan,
                "electrical aggregation has " + std::to_string(rates.electrical_agg_ports) +
                    " ports, cannot attach " + std::to_string(access_switches) +
                    " access switches");
  }
  Topology t;
  for (int s = 0; s < access_switches; ++s) {
    t.add_node("asw" + std::to_string(s), NodeKind::access_switch);
  }
  t.add_node("eagg0", NodeKind::electrical_agg);
  t.add_node("eagg1", NodeKind::electrical_agg);
  t.add_node("oagg0", NodeKind::optical_agg);
  for (int s = 0; s < access_switches; ++s) {
    NodeId sw = "asw" + std::to_string(s);
    for (int i = 0; i < hosts_per_switch; ++i) {
      NodeId h = "h" + std::to_string(s * hosts_per_switch + i);
      t.add_node(h, NodeKind::host);
      t.add_link(h, sw, rates.host_link_bps, LinkKind::epn);
    }
    t.add_link(sw, "eagg0", rates.agg_uplink_bps, LinkKind::epn);
    t.add_link(sw, "eagg1", rates.agg_uplink_bps, LinkKind::epn);
    // Fiber capacity covers the whole wavelength inventory.
    t.add_link(sw, "oagg0", rates.wavelength_bps * wavelengths, LinkKind::ocn, wavelengths);
  }
  return t;
}

std::vector<NodeId> shortest_path(const Topology& topo, const NodeId& from, const NodeId& to,
                                  const std::function<bool(const TopoLink&)>& allow) {
  if (from == to || !topo.has_node(from) || !topo.has_node(to)) return {};
  auto allowed_neighbors = [&](const NodeId& n) {
    std::vector<NodeId> out;
    for (const auto& m : topo.neighbors(n)) {
      const TopoLink* l = topo.link_between(n, m);
      if (l && allow(*l)) out.push_back(m);
    }
    return out;  // sorted, since Topology::neighbors sorts
  };
  // Hop distances toward `to`, then a greedy lexicographic descent from `from`.
  std::map<NodeId, int> dist;
  std::deque<NodeId> q;
  dist[to] = 0;
  q.push_back(to);
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop_front();
    for (const auto& m : allowed_neighbors(n)) {
      if (!dist.count(m)) {
        dist[m] = dist[n] + 1;
        q.push_back(m);
      }
    }
  }
  if (!dist.count(from)) return {};
  std::vector<NodeId> path{from};
  NodeId cur = from;
  while (cur != to) {
    int d = dist[cur];
    NodeId next;
    for (const auto& m : allowed_neighbors(cur)) {
      auto it = dist.find(m);
      if (it != dist.end() && it->second == d - 1) {
        next = m;
        break;  // neighbors are sorted: first hit is the lexicographic choice
      }
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

std::vector<NodeId> ocn_route(const Topology& topo, const NodeId& src, const NodeId& dst) {
  auto path = shortest_path(topo, src, dst, [&](const TopoLink& l) {
    if (l.kind == LinkKind::ocn) return true;
    // epn links are admitted only as host attachments
    return topo.kind_of(l.a) == NodeKind::host || topo.kind_of(l.b) == NodeKind::host;
  });
  // A circuit must actually traverse the optical stage.
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const TopoLink* l = topo.link_between(path[i], path[i + 1]);
    if (l && l->kind == LinkKind::ocn) return path;
  }
  return {};
}

std::vector<NodeId> epn_route(const Topology& topo, const NodeId& src, const NodeId& dst,
                              std::uint64_t tie_seed) {
  auto allow = [](const TopoLink& l) { return l.kind == LinkKind::epn; };
  if (src == dst || !topo.has_node(src) || !topo.has_node(dst)) return {};
  std::map<NodeId, int> dist;
  std::deque<NodeId> q;
  dist[dst] = 0;
  q.push_back(dst);
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop_front();
    for (const auto& m : topo.neighbors(n, LinkKind::epn)) {
      if (!dist.count(m)) {
        dist[m] = dist[n] + 1;
        q.push_back(m);
      }
    }
  }
  (void)allow;
  if (!dist.count(src)) return {};
  // Equal-cost next hops are picked by a per-flow hash so load spreads
  // across the aggregation switches without per-epoch state.
  std::vector<NodeId> path{src};
  NodeId cur = src;
  while (cur != dst) {
    int d = dist[cur];
    NodeId best;
    std::uint64_t best_score = std::numeric_limits<std::uint64_t>::max();
    for (const auto& m : topo.neighbors(cur, LinkKind::epn)) {
      auto it = dist.find(m);
      if (it == dist.end() || it->second != d - 1) continue;
      std::uint64_t score = mix64(tie_seed ^ fnv1a64(m));
      if (score < best_score || (score == best_score && (best.empty() || m < best))) {
        best_score = score;
        best = m;
      }
    }
    path.push_back(best);
    cur = best;
  }
  return path;
}

}  // namespace hybsched
