#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hybsched/bottleneck.hpp"
#include "hybsched/change.hpp"
#include "hybsched/spectral.hpp"
#include "hybsched/topology.hpp"

namespace hybsched {

struct SchedulerConfig {
  double val_fraction = 0.2;            // change threshold per active edge
  std::optional<double> val_absolute;   // fixed threshold, overrides the fraction rule
  int k = kDefaultSpectralK;
  int max_offloads_per_epoch = 0;       // 0 means wavelengths_per_link
  int wavelengths_per_link = 16;
  double setup_delay_s = 0.1;
  double epoch_length_s = 4.0;
  DistanceMode distance_mode = DistanceMode::neighborhood;
  bool trace_all_stages = false;        // offline analysis: fill the trace past failed gates

  double effective_val(std::size_t active_edges) const {
    if (val_absolute) return *val_absolute;
    return val_fraction * static_cast<double>(active_edges);
  }
  int effective_max_offloads() const {
    return max_offloads_per_epoch > 0 ? max_offloads_per_epoch : wavelengths_per_link;
  }
  void validate() const;
};

struct RankedFlow {
  FlowId flow;
  double rank = 0.0;           // kappa
  double distance_now = 0.0;   // delta
  double distance_prev = 0.0;  // delta'
};

enum class Placement { epn, ocn };

struct OcnAssignment {
  std::vector<NodeId> route;
  int wavelength = 0;
};

struct ScheduleDecision {
  FlowId flow;
  Placement placement = Placement::epn;
  std::optional<int> wavelength;
  std::vector<NodeId> route;  // ocn only; epn routes are the transport's business
};

/// Carry-over between epochs: live circuits, last epoch's per-flow distances,
/// and how many consecutive epochs each flow ranked negative.
struct SchedulerState {
  std::map<FlowId, OcnAssignment> circuits;
  std::map<FlowId, double> prev_distance;
  std::map<FlowId, int> negative_streak;
};

struct TraceFlow {
  FlowId flow;
  double delta = 0.0;
  double delta_prev = 0.0;
  double kappa = 0.0;
  Placement placement = Placement::epn;
  std::optional<int> wavelength;
  std::vector<NodeId> route;
};

/// Audit record of one scheduling pass; serialized as JSON by the CLI.
struct EpochTrace {
  std::uint64_t epoch = 0;
  double distance = 0.0;
  bool exceeded = false;
  std::optional<double> h;
  std::optional<bool> bottleneck;
  std::vector<TraceFlow> flows;
  std::string reason;
  std::string error;  // empty when every stage ran clean
};

struct EpochResult {
  std::vector<ScheduleDecision> decisions;
  EpochTrace trace;
  SchedulerState state;
};

/// Kappa ranking: normalized rise of each flow's spectral distance, sorted
/// descending (ties: larger current distance, then flow id).
std::vector<RankedFlow> rank_flows(const std::map<FlowId, double>& distances_now,
                                   const std::map<FlowId, double>& distances_prev);

/// First-fit wavelength assignment with continuity along each circuit route.
/// Flows holding a still-valid circuit keep it; new circuits are granted in
/// rank order until the offload cap, wavelength inventory, or the endpoint
/// switches' circuit bounds run out. Everything else stays on the packet
/// network.
std::vector<ScheduleDecision> assign_wavelengths(const std::vector<RankedFlow>& ranked,
                                                 const Topology& topo,
                                                 const std::map<FlowId, OcnAssignment>& active,
                                                 const SchedulerConfig& cfg);

/// One full scheduling pass over an epoch pair: change gate, bottleneck gate,
/// per-flow spectral distances, ranking, wavelength assignment. Gated or
/// failed passes leave current placements untouched. The observed bipartition
/// may be supplied from directional sample data; otherwise it is derived from
/// the current graph.
EpochResult run_epoch(const TrafficGraph& prev, const TrafficGraph& now, const Topology& topo,
                      const SchedulerState& state, const SchedulerConfig& cfg,
                      std::uint64_t epoch = 0,
                      const std::optional<Bipartition>& observed = std::nullopt);

}  // namespace hybsched
