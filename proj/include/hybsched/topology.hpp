#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hybsched/flow.hpp"

namespace hybsched {

enum class NodeKind { host, access_switch, electrical_agg, optical_agg };
enum class LinkKind { epn, ocn };

const char* node_kind_name(NodeKind k);
const char* link_kind_name(LinkKind k);
NodeKind node_kind_from(const std::string& s);
LinkKind link_kind_from(const std::string& s);

struct TopoNode {
  NodeId id;
  NodeKind kind = NodeKind::host;
};

struct TopoLink {
  NodeId a;
  NodeId b;
  double capacity_bps = 0.0;
  LinkKind kind = LinkKind::epn;
  int wavelengths = 0;  // ocn only

  FlowId key() const { return FlowId(a, b); }
};

/// Physical node/link graph of the hybrid fabric. Links are undirected and
/// unique per node pair; ocn links carry a wavelength inventory.
class Topology {
 public:
  void add_node(const NodeId& id, NodeKind kind);
  void add_link(const NodeId& a, const NodeId& b, double capacity_bps, LinkKind kind,
                int wavelengths = 0);

  bool has_node(const NodeId& id) const { return index_.count(id) != 0; }
  NodeKind kind_of(const NodeId& id) const;
  const TopoLink* link_between(const NodeId& a, const NodeId& b) const;

  const std::vector<TopoNode>& nodes() const noexcept { return nodes_; }
  const std::vector<TopoLink>& links() const noexcept { return links_; }

  /// Topology neighbors of n, sorted by id; optionally restricted by link kind.
  std::vector<NodeId> neighbors(const NodeId& n,
                                std::optional<LinkKind> kind = std::nullopt) const;
  std::size_t degree(const NodeId& n) const { return neighbors(n).size(); }

  bool connected() const;

  /// Access switch a host hangs off (the host's unique neighbor).
  NodeId access_switch_of(const NodeId& host) const;

 private:
  std::vector<TopoNode> nodes_;
  std::vector<TopoLink> links_;
  std::map<NodeId, std::size_t> index_;
  std::map<FlowId, std::size_t> link_index_;
};

/// Default rates put the squeeze on the electrical aggregation layer (10 Gbps
/// hosts behind 1 Gbps uplinks) so offloading to 10 Gbps wavelengths matters.
struct Fig6Rates {
  double host_link_bps = 10e9;
  double agg_uplink_bps = 1e9;
  double wavelength_bps = 10e9;
  int electrical_agg_ports = 32;
};

/// Two-layer hybrid fabric: hosts behind access switches, two electrical
/// aggregation switches, and one all-optical aggregation stage reached by an
/// ocn link per access switch. Node ids are h<i>, asw<i>, eagg<i>, oagg0.
Topology build_fig6_topology(int hosts_per_switch, int access_switches, int wavelengths,
                             const Fig6Rates& rates = {});

/// Lexicographically smallest shortest path (hop count) between two nodes over
/// links admitted by `allow`. Empty when unreachable or from == to.
std::vector<NodeId> shortest_path(const Topology& topo, const NodeId& from, const NodeId& to,
                                  const std::function<bool(const TopoLink&)>& allow);

/// Circuit route between two hosts: access links plus ocn links only (the
/// electrical aggregation stage is excluded). Empty when no circuit is possible.
std::vector<NodeId> ocn_route(const Topology& topo, const NodeId& src, const NodeId& dst);

/// Packet route between two hosts over epn links. Equal-cost ties are broken
/// per flow by `tie_seed` so concurrent flows spread across the aggregation
/// switches deterministically.
std::vector<NodeId> epn_route(const Topology& topo, const NodeId& src, const NodeId& dst,
                              std::uint64_t tie_seed);

}  // namespace hybsched
