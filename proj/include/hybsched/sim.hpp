#pragma once

#include <memory>

#include "hybsched/scheduler.hpp"
#include "hybsched/traffic_gen.hpp"

namespace hybsched {

/// Per-epoch simulator outputs (the three reported metrics plus audit data).
struct EpochMetrics {
  std::uint64_t epoch = 0;
  double avg_throughput_bps = 0.0;
  double cumulative_config_delay_ms = 0.0;
  double stability = 1.0;  // 1 when no circuit persisted across the boundary
  int offloaded_count = 0;
  std::map<FlowId, double> per_link_utilization;
};

/// Pluggable placement policy, invoked at each epoch end with the observed
/// (offered-load) graphs; returns placements for the next epoch.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual std::vector<ScheduleDecision> decide(const TrafficGraph& prev, const TrafficGraph& now,
                                               const std::vector<TrafficSample>& samples,
                                               const Topology& topo, std::uint64_t epoch) = 0;
  /// Last scheduling trace, when the strategy produces one.
  virtual const EpochTrace* last_trace() const { return nullptr; }
};

std::vector<std::string> known_strategies();
std::unique_ptr<Strategy> make_strategy(const std::string& name, const SchedulerConfig& cfg,
                                        std::uint64_t seed);

/// Byte-level audit of one completed epoch, for invariant checks.
struct EpochDetail {
  std::map<FlowId, double> offered_bytes;            // per flow
  std::map<FlowId, double> delivered_bytes;          // per flow
  std::map<FlowId, double> link_bytes;               // per topology link
  std::map<FlowId, OcnAssignment> circuits;          // circuits carrying this epoch
};

/// One simulation run: epoch-granular fluid transport over the hybrid fabric.
/// Packet flows share epn links max-min fairly; circuits move bytes at their
/// wavelength rate after paying the setup delay (they stay on the packet
/// network while the circuit comes up). Fully deterministic in (topology,
/// configs, strategy, seed).
class SimState {
 public:
  SimState(Topology topo, TrafficGenConfig traffic, SchedulerConfig sched,
           std::unique_ptr<Strategy> strategy);

  EpochMetrics step_epoch();

  const Topology& topology() const { return topo_; }
  const TrafficGraph& observed() const { return observed_now_; }
  const EpochDetail& last_detail() const { return detail_; }
  const Strategy& strategy() const { return *strategy_; }
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  void run_phase(double duration_s, const std::map<FlowId, OcnAssignment>& circuits);

  Topology topo_;
  TrafficGenConfig traffic_;
  SchedulerConfig sched_;
  std::unique_ptr<Strategy> strategy_;
  std::uint64_t epoch_ = 0;
  std::map<FlowId, double> backlog_bytes_;
  std::map<FlowId, OcnAssignment> placements_;      // circuits for the upcoming epoch
  std::map<FlowId, OcnAssignment> prev_circuits_;   // circuits of the last completed epoch
  TrafficGraph observed_prev_;
  TrafficGraph observed_now_;
  EpochDetail detail_;
  double cumulative_config_delay_ms_ = 0.0;
  std::vector<std::string> errors_;
};

struct RunSummary {
  double mean_throughput_bps = 0.0;
  double total_config_delay_ms = 0.0;
  double mean_stability = 1.0;
};

struct RunResult {
  std::string strategy;
  std::uint64_t seed = 0;
  std::vector<EpochMetrics> epochs;
  RunSummary summary;
};

struct ExperimentResults {
  std::vector<RunResult> runs;  // sorted by (strategy, seed)
};

ExperimentResults run_experiment(const Topology& topo, const std::vector<std::string>& strategies,
                                 int epochs, const std::vector<std::uint64_t>& seeds,
                                 const SchedulerConfig& sched, const TrafficGenConfig& traffic);

}  // namespace hybsched
