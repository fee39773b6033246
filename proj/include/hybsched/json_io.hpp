#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "hybsched/scheduler.hpp"
#include "hybsched/sim.hpp"

namespace hybsched {

inline constexpr const char* kVersion = "0.1.0";

nlohmann::json topology_to_json(const Topology& topo);
Topology topology_from_json(const nlohmann::json& j);
Topology load_topology(const std::string& path);

nlohmann::json trace_to_json(const EpochTrace& trace);

/// Full experiment description consumed by the simulate/compare commands.
struct RunConfig {
  Topology topology;
  std::vector<std::string> strategies{"lsd"};
  int epochs = 2;
  std::vector<std::uint64_t> seeds{1};
  SchedulerConfig scheduler;
  TrafficGenConfig traffic;
  std::string output = "results.json";
};

RunConfig run_config_from_json(const nlohmann::json& j, const std::string& base_dir);
RunConfig load_run_config(const std::string& path);

/// Results document with version and a hash of the originating config for
/// provenance; formatting is deterministic.
nlohmann::json results_to_json(const ExperimentResults& results, const std::string& config_hash);

std::string json_hash(const nlohmann::json& j);

}  // namespace hybsched
