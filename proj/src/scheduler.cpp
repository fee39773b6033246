#include "hybsched/scheduler.hpp"

#include <algorithm>
#include <cmath>

namespace hybsched {

namespace {

// Nodes of the route that touch an ocn link, in route order. The first and
// last of these are where the circuit is created.
std::vector<NodeId> circuit_switches(const Topology& topo, const std::vector<NodeId>& route) {
  std::vector<NodeId> touching;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    const TopoLink* l = topo.link_between(route[i], route[i + 1]);
    if (l && l->kind == LinkKind::ocn) {
      if (touching.empty() || touching.back() != route[i]) touching.push_back(route[i]);
      touching.push_back(route[i + 1]);
    }
  }
  return touching;
}

std::vector<FlowId> ocn_links_of(const Topology& topo, const std::vector<NodeId>& route) {
  std::vector<FlowId> links;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    const TopoLink* l = topo.link_between(route[i], route[i + 1]);
    if (!l) throw Error(Errc::not_found, "route uses missing link " + route[i] + "-" + route[i + 1]);
    if (l->kind == LinkKind::ocn) links.push_back(l->key());
  }
  return links;
}

bool assignment_still_valid(const Topology& topo, const FlowId& flow, const OcnAssignment& a) {
  if (a.route.size() < 2) return false;
  if (!(flow.contains(a.route.front()) && flow.contains(a.route.back()))) return false;
  bool crossed_ocn = false;
  for (std::size_t i = 0; i + 1 < a.route.size(); ++i) {
    const TopoLink* l = topo.link_between(a.route[i], a.route[i + 1]);
    if (!l) return false;
    if (l->kind == LinkKind::ocn) {
      crossed_ocn = true;
      if (a.wavelength < 0 || a.wavelength >= l->wavelengths) return false;
    }
  }
  return crossed_ocn;
}

}  // namespace

void SchedulerConfig::validate() const {
  if (val_fraction < 0.0 || (val_absolute && *val_absolute < 0.0)) {
    throw Error(Errc::invalid_config, "change threshold must be >= 0");
  }
  if (k < 1) throw Error(Errc::invalid_config, "spectral k must be >= 1");
  if (wavelengths_per_link < 1) {
    throw Error(Errc::invalid_config, "wavelengths_per_link must be >= 1");
  }
  if (setup_delay_s < 0.0) throw Error(Errc::invalid_config, "setup delay must be >= 0");
  if (epoch_length_s <= 0.0) throw Error(Errc::invalid_config, "epoch length must be > 0");
}

std::vector<RankedFlow> rank_flows(const std::map<FlowId, double>& distances_now,
                                   const std::map<FlowId, double>& distances_prev) {
  std::vector<RankedFlow> out;
  out.reserve(distances_now.size());
  for (const auto& [flow, delta] : distances_now) {
    auto it = distances_prev.find(flow);
    double prev = it == distances_prev.end() ? 0.0 : it->second;
    RankedFlow r{flow, 0.0, delta, prev};
    double hi = std::max(delta, prev);
    if (hi > 0.0) r.rank = (delta - prev) / hi;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const RankedFlow& x, const RankedFlow& y) {
    if (x.rank != y.rank) return x.rank > y.rank;
    if (x.distance_now != y.distance_now) return x.distance_now > y.distance_now;
    return x.flow < y.flow;
  });
  return out;
}

std::vector<ScheduleDecision> assign_wavelengths(const std::vector<RankedFlow>& ranked,
                                                 const Topology& topo,
                                                 const std::map<FlowId, OcnAssignment>& active,
                                                 const SchedulerConfig& cfg) {
  cfg.validate();
  std::map<FlowId, std::set<int>> used;        // ocn link -> taken wavelengths
  std::map<NodeId, int> circuits_at;           // endpoint switch -> live circuits
  std::map<FlowId, OcnAssignment> retained;

  for (const auto& r : ranked) {
    auto it = active.find(r.flow);
    if (it == active.end()) continue;
    if (!assignment_still_valid(topo, r.flow, it->second)) continue;
    retained.emplace(r.flow, it->second);
    for (const auto& link : ocn_links_of(topo, it->second.route)) {
      used[link].insert(it->second.wavelength);
    }
    auto sw = circuit_switches(topo, it->second.route);
    if (!sw.empty()) {
      circuits_at[sw.front()]++;
      circuits_at[sw.back()]++;
    }
  }

  std::vector<ScheduleDecision> out;
  out.reserve(ranked.size());
  int fresh = 0;
  const int cap = cfg.effective_max_offloads();
  for (const auto& r : ranked) {
    ScheduleDecision d{r.flow, Placement::epn, std::nullopt, {}};
    auto kept = retained.find(r.flow);
    if (kept != retained.end()) {
      d.placement = Placement::ocn;
      d.wavelength = kept->second.wavelength;
      d.route = kept->second.route;
      out.push_back(std::move(d));
      continue;
    }
    if (fresh >= cap) {
      out.push_back(std::move(d));
      continue;
    }
    auto route = ocn_route(topo, r.flow.a(), r.flow.b());
    if (route.empty()) {
      out.push_back(std::move(d));
      continue;
    }
    auto sw = circuit_switches(topo, route);
    NodeId end_a = sw.front();
    NodeId end_b = sw.back();
    auto within_bound = [&](const NodeId& n) {
      int bound = static_cast<int>(topo.degree(n)) / 2;
      int held = circuits_at.count(n) ? circuits_at[n] : 0;
      return held + 1 <= bound;
    };
    if (!within_bound(end_a) || (end_b != end_a && !within_bound(end_b))) {
      out.push_back(std::move(d));
      continue;
    }
    auto links = ocn_links_of(topo, route);
    int inventory = cfg.wavelengths_per_link;
    for (const auto& link : links) {
      inventory = std::min(inventory, topo.link_between(link.a(), link.b())->wavelengths);
    }
    int lambda = -1;
    for (int w = 0; w < inventory; ++w) {
      bool free = true;
      for (const auto& link : links) {
        if (used.count(link) && used[link].count(w)) {
          free = false;
          break;
        }
      }
      if (free) {
        lambda = w;
        break;
      }
    }
    if (lambda < 0) {  // wavelength exhaustion, not an error
      out.push_back(std::move(d));
      continue;
    }
    for (const auto& link : links) used[link].insert(lambda);
    circuits_at[end_a]++;
    if (end_b != end_a) circuits_at[end_b]++;
    d.placement = Placement::ocn;
    d.wavelength = lambda;
    d.route = route;
    ++fresh;
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

// Decisions that keep every still-valid live circuit and leave everything
// else on the packet network; used when a gate stops the pipeline.
std::vector<ScheduleDecision> retain_placements(const TrafficGraph& now, const Topology& topo,
                                                const std::map<FlowId, OcnAssignment>& active) {
  std::vector<ScheduleDecision> out;
  for (const auto& [flow, w] : now.edges()) {
    ScheduleDecision d{flow, Placement::epn, std::nullopt, {}};
    auto it = active.find(flow);
    if (it != active.end() && assignment_still_valid(topo, flow, it->second)) {
      d.placement = Placement::ocn;
      d.wavelength = it->second.wavelength;
      d.route = it->second.route;
    }
    out.push_back(std::move(d));
  }
  return out;
}

void fill_trace_flows(EpochTrace& trace, const std::vector<ScheduleDecision>& decisions,
                      const std::vector<RankedFlow>& ranked) {
  std::map<FlowId, const RankedFlow*> by_flow;
  for (const auto& r : ranked) by_flow[r.flow] = &r;
  for (const auto& d : decisions) {
    TraceFlow t{d.flow, 0.0, 0.0, 0.0, d.placement, d.wavelength, d.route};
    auto it = by_flow.find(d.flow);
    if (it != by_flow.end()) {
      t.delta = it->second->distance_now;
      t.delta_prev = it->second->distance_prev;
      t.kappa = it->second->rank;
    }
    trace.flows.push_back(std::move(t));
  }
}

}  // namespace

EpochResult run_epoch(const TrafficGraph& prev, const TrafficGraph& now, const Topology& topo,
                      const SchedulerState& state, const SchedulerConfig& cfg,
                      std::uint64_t epoch, const std::optional<Bipartition>& observed) {
  cfg.validate();
  EpochResult res;
  res.state = state;
  res.trace.epoch = epoch;

  // Circuits whose traffic vanished are released at the epoch boundary.
  std::map<FlowId, OcnAssignment> active;
  for (const auto& [flow, a] : state.circuits) {
    if (now.weight(flow) > 0.0) active.emplace(flow, a);
  }

  ChangeReport report = graph_distance(prev, now);
  report.exceeded = change_exceeds(report, cfg.effective_val(report.per_edge.size()));
  res.trace.distance = report.total_distance;
  res.trace.exceeded = report.exceeded;

  auto compute_distances = [&](std::map<FlowId, double>& delta) {
    try {
      for (const auto& [flow, w] : now.edges()) {
        delta[flow] = flow_spectral_distance(prev, now, flow, cfg.k, cfg.distance_mode);
      }
      return true;
    } catch (const Error& e) {
      res.trace.error = std::string(errc_name(e.code())) + ": " + e.what();
      return false;
    }
  };

  auto gate_out = [&](const std::string& reason) {
    res.trace.reason = reason;
    res.decisions = retain_placements(now, topo, active);
    res.state.circuits.clear();
    for (const auto& d : res.decisions) {
      if (d.placement == Placement::ocn) {
        res.state.circuits.emplace(d.flow, OcnAssignment{d.route, *d.wavelength});
      }
    }
    std::vector<RankedFlow> ranked;
    if (cfg.trace_all_stages && res.trace.error.empty()) {
      std::map<FlowId, double> delta;
      if (compute_distances(delta)) ranked = rank_flows(delta, state.prev_distance);
    }
    fill_trace_flows(res.trace, res.decisions, ranked);
  };

  // Stage 2: bottleneck gate. Failures leave placements unchanged.
  std::optional<BottleneckVerdict> verdict;
  auto compute_h = [&]() {
    try {
      Bipartition part = observed ? *observed : default_bipartition(now, topo);
      verdict = estimate_h(now, topo, part, cfg.epoch_length_s);
      res.trace.h = verdict->h;
      res.trace.bottleneck = verdict->bottleneck;
      return true;
    } catch (const Error& e) {
      res.trace.error = std::string(errc_name(e.code())) + ": " + e.what();
      return false;
    }
  };

  if (!report.exceeded) {
    if (cfg.trace_all_stages) compute_h();
    gate_out("change-below-threshold");
    return res;
  }

  if (!compute_h()) {
    gate_out("error");
    return res;
  }

  if (!verdict->bottleneck) {
    gate_out("feasible");
    return res;
  }

  // Stage 3: per-flow spectral distances over the epoch pair.
  std::map<FlowId, double> delta;
  if (!compute_distances(delta)) {
    gate_out("error");
    return res;
  }

  // Stage 4: rank and assign.
  auto ranked = rank_flows(delta, state.prev_distance);

  // Flows ranking negative twice in a row lose their circuit.
  std::map<FlowId, int> streak;
  for (const auto& r : ranked) {
    int prev_streak = 0;
    auto it = state.negative_streak.find(r.flow);
    if (it != state.negative_streak.end()) prev_streak = it->second;
    streak[r.flow] = r.rank < 0.0 ? prev_streak + 1 : 0;
    if (streak[r.flow] >= 2) active.erase(r.flow);
  }

  res.decisions = assign_wavelengths(ranked, topo, active, cfg);
  res.trace.reason = "offload";
  fill_trace_flows(res.trace, res.decisions, ranked);

  res.state.circuits.clear();
  for (const auto& d : res.decisions) {
    if (d.placement == Placement::ocn) {
      res.state.circuits.emplace(d.flow, OcnAssignment{d.route, *d.wavelength});
    }
  }
  res.state.prev_distance = std::move(delta);
  res.state.negative_streak = std::move(streak);
  return res;
}

}  // namespace hybsched
