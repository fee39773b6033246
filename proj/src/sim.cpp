#include "hybsched/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybsched {

namespace {

struct TransportFlow {
  FlowId id;
  double cap_bps;             // demand rate, possibly clipped by a wavelength
  std::vector<FlowId> links;  // link keys along the path
};

// Progressive water-filling: every unfrozen flow's rate rises at the same
// pace until a link saturates or a flow reaches its cap. Exact in at most
// flows + links rounds.
std::vector<double> max_min_rates(const std::vector<TransportFlow>& flows,
                                  std::map<FlowId, double>& residual_bps) {
  std::vector<double> rate(flows.size(), 0.0);
  std::vector<bool> frozen(flows.size(), false);
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (flows[i].cap_bps <= 0.0 || flows[i].links.empty()) frozen[i] = true;
  }
  const double eps = 1e-9;
  for (std::size_t round = 0; round <= flows.size() + residual_bps.size(); ++round) {
    std::map<FlowId, int> users;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      if (frozen[i]) continue;
      for (const auto& l : flows[i].links) users[l]++;
    }
    if (users.empty()) break;
    double inc = std::numeric_limits<double>::infinity();
    for (const auto& [l, n] : users) {
      inc = std::min(inc, std::max(0.0, residual_bps.at(l)) / n);
    }
    for (std::size_t i = 0; i < flows.size(); ++i) {
      if (!frozen[i]) inc = std::min(inc, flows[i].cap_bps - rate[i]);
    }
    if (!std::isfinite(inc)) break;
    if (inc > 0.0) {
      for (std::size_t i = 0; i < flows.size(); ++i) {
        if (frozen[i]) continue;
        rate[i] += inc;
        for (const auto& l : flows[i].links) residual_bps[l] -= inc;
      }
    }
    bool any_frozen = false;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      if (frozen[i]) continue;
      bool done = rate[i] >= flows[i].cap_bps - eps * (1.0 + flows[i].cap_bps);
      if (!done) {
        for (const auto& l : flows[i].links) {
          if (residual_bps.at(l) <= eps * (1.0 + rate[i])) {
            done = true;
            break;
          }
        }
      }
      if (done) {
        frozen[i] = true;
        any_frozen = true;
      }
    }
    if (!any_frozen && inc <= 0.0) break;
  }
  return rate;
}

std::vector<FlowId> path_links(const std::vector<NodeId>& route) {
  std::vector<FlowId> out;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) out.emplace_back(route[i], route[i + 1]);
  return out;
}

double wavelength_rate(const Topology& topo, const std::vector<NodeId>& route) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    const TopoLink* l = topo.link_between(route[i], route[i + 1]);
    if (l && l->kind == LinkKind::ocn) r = std::min(r, l->capacity_bps / l->wavelengths);
  }
  return r;
}

}  // namespace

SimState::SimState(Topology topo, TrafficGenConfig traffic, SchedulerConfig sched,
                   std::unique_ptr<Strategy> strategy)
    : topo_(std::move(topo)),
      traffic_(std::move(traffic)),
      sched_(std::move(sched)),
      strategy_(std::move(strategy)) {
  sched_.validate();
  traffic_.validate();
  if (!topo_.connected()) throw Error(Errc::invalid_config, "topology must be connected");
}

void SimState::run_phase(double duration_s, const std::map<FlowId, OcnAssignment>& circuits) {
  if (duration_s <= 0.0) return;
  std::map<FlowId, double> residual;
  for (const auto& l : topo_.links()) residual[l.key()] = l.capacity_bps;

  auto deliver = [&](const FlowId& flow, double rate_bps, const std::vector<FlowId>& links) {
    double bytes = std::min(backlog_bytes_[flow], rate_bps * duration_s / 8.0);
    if (bytes <= 0.0) return;
    backlog_bytes_[flow] -= bytes;
    detail_.delivered_bytes[flow] += bytes;
    for (const auto& l : links) detail_.link_bytes[l] += bytes;
  };

  // Circuits first: each rides its wavelength, contending only for the
  // access links it shares with other circuits.
  std::vector<TransportFlow> circuit_flows;
  for (const auto& [flow, asg] : circuits) {
    auto it = backlog_bytes_.find(flow);
    if (it == backlog_bytes_.end() || it->second <= 0.0) continue;
    double demand = it->second * 8.0 / duration_s;
    circuit_flows.push_back(
        {flow, std::min(demand, wavelength_rate(topo_, asg.route)), path_links(asg.route)});
  }
  auto crates = max_min_rates(circuit_flows, residual);
  for (std::size_t i = 0; i < circuit_flows.size(); ++i) {
    deliver(circuit_flows[i].id, crates[i], circuit_flows[i].links);
  }

  // Packet flows share what is left of the epn links.
  std::vector<TransportFlow> packet_flows;
  for (const auto& [flow, bytes] : backlog_bytes_) {
    if (bytes <= 0.0 || circuits.count(flow)) continue;
    auto route = epn_route(topo_, flow.a(), flow.b(), fnv1a64(flow.str()));
    if (route.empty()) continue;
    packet_flows.push_back({flow, bytes * 8.0 / duration_s, path_links(route)});
  }
  auto prates = max_min_rates(packet_flows, residual);
  for (std::size_t i = 0; i < packet_flows.size(); ++i) {
    deliver(packet_flows[i].id, prates[i], packet_flows[i].links);
  }
}

EpochMetrics SimState::step_epoch() {
  const double T = sched_.epoch_length_s;
  detail_ = EpochDetail{};

  auto samples = generate_epoch_traffic(traffic_, topo_, epoch_, T);
  for (const auto& s : samples) {
    backlog_bytes_[FlowId(s.src, s.dst)] += static_cast<double>(s.bytes);
  }

  // Observed statistics are the offered load: what sources try to move this
  // epoch, which (unlike delivered bytes) can exceed the cut capacity and
  // expose a bottleneck.
  observed_now_ = TrafficGraph{};
  for (const auto& [flow, bytes] : backlog_bytes_) {
    if (bytes > 0.0) observed_now_.set_weight(flow.a(), flow.b(), bytes);
  }
  detail_.offered_bytes.clear();
  for (const auto& [flow, bytes] : backlog_bytes_) {
    if (bytes > 0.0) detail_.offered_bytes[flow] = bytes;
  }
  detail_.circuits = placements_;

  // Circuits changed since last epoch pay the setup delay: they keep moving
  // bytes over the packet network until the circuit is up.
  std::map<FlowId, OcnAssignment> carried, fresh;
  for (const auto& [flow, asg] : placements_) {
    auto it = prev_circuits_.find(flow);
    if (it != prev_circuits_.end() && it->second.route == asg.route &&
        it->second.wavelength == asg.wavelength) {
      carried.emplace(flow, asg);
    } else {
      fresh.emplace(flow, asg);
    }
  }
  double setup = std::min(sched_.setup_delay_s, T);
  if (!fresh.empty() && setup > 0.0) {
    run_phase(setup, carried);
    run_phase(T - setup, placements_);
  } else {
    run_phase(T, placements_);
  }

  EpochMetrics m;
  m.epoch = epoch_;
  double delivered = 0.0;
  for (const auto& [flow, bytes] : detail_.delivered_bytes) delivered += bytes;
  m.avg_throughput_bps = delivered * 8.0 / T;
  cumulative_config_delay_ms_ += static_cast<double>(fresh.size()) * sched_.setup_delay_s * 1e3;
  m.cumulative_config_delay_ms = cumulative_config_delay_ms_;
  m.offloaded_count = static_cast<int>(placements_.size());
  int persisted = 0, stable = 0;
  for (const auto& [flow, asg] : placements_) {
    auto it = prev_circuits_.find(flow);
    if (it == prev_circuits_.end()) continue;
    ++persisted;
    if (it->second.route == asg.route && it->second.wavelength == asg.wavelength) ++stable;
  }
  m.stability = persisted == 0 ? 1.0 : static_cast<double>(stable) / persisted;
  for (const auto& l : topo_.links()) {
    double cap_bytes = l.capacity_bps * T / 8.0;
    auto it = detail_.link_bytes.find(l.key());
    double used = it == detail_.link_bytes.end() ? 0.0 : it->second;
    m.per_link_utilization[l.key()] = std::min(1.0, used / cap_bytes);
  }

  // Epoch end: the strategy picks next epoch's placements from the observed
  // graphs. A strategy failure downgrades everything to the packet network.
  prev_circuits_ = placements_;
  try {
    auto decisions = strategy_->decide(observed_prev_, observed_now_, samples, topo_, epoch_);
    placements_.clear();
    for (const auto& d : decisions) {
      if (d.placement == Placement::ocn) {
        placements_.emplace(d.flow, OcnAssignment{d.route, *d.wavelength});
      }
    }
  } catch (const Error& e) {
    placements_.clear();
    errors_.push_back("epoch " + std::to_string(epoch_) + ": " + e.what());
  }

  observed_prev_ = observed_now_;
  for (auto it = backlog_bytes_.begin(); it != backlog_bytes_.end();) {
    if (it->second <= 1e-9) it = backlog_bytes_.erase(it);
    else ++it;
  }
  ++epoch_;
  return m;
}

namespace {

class LsdStrategy : public Strategy {
 public:
  LsdStrategy(SchedulerConfig cfg, std::string name) : cfg_(std::move(cfg)), name_(std::move(name)) {}

  std::string name() const override { return name_; }

  std::vector<ScheduleDecision> decide(const TrafficGraph& prev, const TrafficGraph& now,
                                       const std::vector<TrafficSample>&, const Topology& topo,
                                       std::uint64_t epoch) override {
    auto res = run_epoch(prev, now, topo, state_, cfg_, epoch);
    state_ = std::move(res.state);
    trace_ = std::move(res.trace);
    return res.decisions;
  }

  const EpochTrace* last_trace() const override { return &trace_; }

 private:
  SchedulerConfig cfg_;
  std::string name_;
  SchedulerState state_;
  EpochTrace trace_;
};

std::vector<NodeId> sorted_hosts(const Topology& topo) {
  std::vector<NodeId> hosts;
  for (const auto& n : topo.nodes()) {
    if (n.kind == NodeKind::host) hosts.push_back(n.id);
  }
  std::sort(hosts.begin(), hosts.end());
  return hosts;
}

// Flows touching an optical-assigned host become circuit candidates, listed
// in flow-id order; the randomness is in which hosts are optical.
std::vector<RankedFlow> host_coin_candidates(const TrafficGraph& now,
                                             const std::set<NodeId>& optical) {
  std::vector<RankedFlow> out;
  for (const auto& [flow, w] : now.edges()) {
    if (optical.count(flow.a()) || optical.count(flow.b())) {
      out.push_back({flow, 0.0, w, 0.0});
    }
  }
  return out;
}

class RandomStrategy : public Strategy {
 public:
  RandomStrategy(SchedulerConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)), seed_(seed) {}

  std::string name() const override { return "random"; }

  std::vector<ScheduleDecision> decide(const TrafficGraph&, const TrafficGraph& now,
                                       const std::vector<TrafficSample>&, const Topology& topo,
                                       std::uint64_t epoch) override {
    SplitMix64 root = SplitMix64(seed_).split("random-hosts").split(epoch);
    std::set<NodeId> optical;
    for (const auto& h : sorted_hosts(topo)) {
      if (root.split(h).uniform() < 0.5) optical.insert(h);
    }
    return assign_wavelengths(host_coin_candidates(now, optical), topo, {}, cfg_);
  }

 private:
  SchedulerConfig cfg_;
  std::uint64_t seed_;
};

class CyclicRandomStrategy : public Strategy {
 public:
  CyclicRandomStrategy(SchedulerConfig cfg, std::uint64_t seed, double stability_time_s = 16.0,
                       int permutation = 6)
      : cfg_(std::move(cfg)), seed_(seed), stability_time_s_(stability_time_s),
        permutation_(permutation) {}

  std::string name() const override { return "cyclic"; }

  std::vector<ScheduleDecision> decide(const TrafficGraph&, const TrafficGraph& now,
                                       const std::vector<TrafficSample>&, const Topology& topo,
                                       std::uint64_t epoch) override {
    auto hold = static_cast<std::uint64_t>(
        std::max(1.0, std::ceil(stability_time_s_ / cfg_.epoch_length_s)));
    std::uint64_t cycle = (epoch + 1) / hold;  // placements apply to epoch + 1
    auto hosts = sorted_hosts(topo);
    std::set<NodeId> optical;
    SplitMix64 base = SplitMix64(seed_).split("cyclic-base");
    for (std::size_t i = 0; i < hosts.size(); ++i) {
      // The optical set rotates by the permutation value each cycle.
      std::size_t shifted =
          (i + cycle * static_cast<std::uint64_t>(permutation_)) % hosts.size();
      if (base.split(shifted).uniform() < 0.5) optical.insert(hosts[i]);
    }
    auto active = cycle == last_cycle_ ? held_ : std::map<FlowId, OcnAssignment>{};
    auto decisions = assign_wavelengths(host_coin_candidates(now, optical), topo, active, cfg_);
    held_.clear();
    for (const auto& d : decisions) {
      if (d.placement == Placement::ocn) held_.emplace(d.flow, OcnAssignment{d.route, *d.wavelength});
    }
    last_cycle_ = cycle;
    return decisions;
  }

 private:
  SchedulerConfig cfg_;
  std::uint64_t seed_;
  double stability_time_s_;
  int permutation_;
  std::uint64_t last_cycle_ = 0;
  std::map<FlowId, OcnAssignment> held_;
};

}  // namespace

std::vector<std::string> known_strategies() { return {"lsd", "lsd-legacy", "random", "cyclic"}; }

std::unique_ptr<Strategy> make_strategy(const std::string& name, const SchedulerConfig& cfg,
                                        std::uint64_t seed) {
  if (name == "lsd") {
    SchedulerConfig c = cfg;
    c.distance_mode = DistanceMode::neighborhood;
    return std::make_unique<LsdStrategy>(c, "lsd");
  }
  if (name == "lsd-legacy") {
    SchedulerConfig c = cfg;
    c.distance_mode = DistanceMode::edge_weight_legacy;
    return std::make_unique<LsdStrategy>(c, "lsd-legacy");
  }
  if (name == "random") return std::make_unique<RandomStrategy>(cfg, seed);
  if (name == "cyclic") return std::make_unique<CyclicRandomStrategy>(cfg, seed);
  std::string valid;
  for (const auto& s : known_strategies()) valid += (valid.empty() ? "" : ", ") + s;
  throw Error(Errc::usage, "unknown strategy '" + name + "' (valid: " + valid + ")");
}

ExperimentResults run_experiment(const Topology& topo, const std::vector<std::string>& strategies,
                                 int epochs, const std::vector<std::uint64_t>& seeds,
                                 const SchedulerConfig& sched, const TrafficGenConfig& traffic) {
  if (epochs < 2) throw Error(Errc::invalid_config, "need at least 2 epochs");
  if (seeds.empty()) throw Error(Errc::invalid_config, "need at least one seed");
  if (strategies.empty()) throw Error(Errc::invalid_config, "need at least one strategy");
  ExperimentResults results;
  for (const auto& name : strategies) {
    for (auto seed : seeds) {
      TrafficGenConfig t = traffic;
      t.seed = seed;
      SimState sim(topo, t, sched, make_strategy(name, sched, seed));
      RunResult run;
      run.strategy = name;
      run.seed = seed;
      double tput = 0.0, stab = 0.0;
      for (int e = 0; e < epochs; ++e) {
        auto m = sim.step_epoch();
        tput += m.avg_throughput_bps;
        stab += m.stability;
        run.epochs.push_back(std::move(m));
      }
      run.summary.mean_throughput_bps = tput / epochs;
      run.summary.mean_stability = stab / epochs;
      run.summary.total_config_delay_ms = run.epochs.back().cumulative_config_delay_ms;
      results.runs.push_back(std::move(run));
    }
  }
  std::sort(results.runs.begin(), results.runs.end(), [](const RunResult& a, const RunResult& b) {
    if (a.strategy != b.strategy) return a.strategy < b.strategy;
    return a.seed < b.seed;
  });
  return results;
}

}  // namespace hybsched
