#include "hybsched/traffic_gen.hpp"

#include <algorithm>
#include <cmath>

namespace hybsched {

void TrafficGenConfig::validate() const {
  if (arrival_rate_per_host <= 0.0) {
    throw Error(Errc::invalid_config, "arrival rate must be > 0");
  }
  if (sigma < 1.0 || sigma > 5.0) {
    throw Error(Errc::invalid_config, "lognormal sigma must lie in [1, 5]");
  }
  if (byte_scale <= 0.0) throw Error(Errc::invalid_config, "byte scale must be > 0");
}

std::vector<TrafficSample> generate_epoch_traffic(const TrafficGenConfig& cfg,
                                                  const Topology& topo, std::uint64_t epoch,
                                                  double epoch_length_s) {
  cfg.validate();
  if (epoch_length_s <= 0.0) throw Error(Errc::invalid_config, "epoch length must be > 0");
  std::vector<NodeId> hosts;
  for (const auto& n : topo.nodes()) {
    if (n.kind == NodeKind::host) hosts.push_back(n.id);
  }
  std::sort(hosts.begin(), hosts.end());
  std::vector<TrafficSample> out;
  if (hosts.size() < 2) return out;
  SplitMix64 root(cfg.seed);
  for (const auto& src : hosts) {
    SplitMix64 stream = root.split(src).split(epoch);
    std::uint64_t requests = stream.poisson(cfg.arrival_rate_per_host * epoch_length_s);
    for (std::uint64_t r = 0; r < requests; ++r) {
      std::uint64_t pick = stream.below(hosts.size() - 1);
      const NodeId& dst = hosts[pick + (hosts[pick] >= src ? 1 : 0)];
      double raw = cfg.byte_scale * std::exp(cfg.mu + cfg.sigma * stream.normal());
      auto bytes = static_cast<std::uint64_t>(std::llround(std::max(1.0, raw)));
      out.push_back({epoch, src, dst, bytes});
      if (cfg.bijection) out.push_back({epoch, dst, src, bytes});
    }
  }
  return out;
}

}  // namespace hybsched
