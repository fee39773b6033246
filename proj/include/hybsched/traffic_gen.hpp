#pragma once

#include <cstdint>
#include <vector>

#include "hybsched/rng.hpp"
#include "hybsched/topology.hpp"

namespace hybsched {

/// Poisson request arrivals per host with LogNormal flow sizes:
/// bytes = byte_scale * exp(mu + sigma * Z). Every request is mirrored so each
/// host receives as much as it sends (bijection model).
struct TrafficGenConfig {
  double arrival_rate_per_host = 1.0;  // requests per second
  double sigma = 2.0;                  // log-space scale, within [1, 5]
  double mu = 0.0;                     // log-space shape
  double byte_scale = 1e6;             // bytes at exp(0)
  std::uint64_t seed = 1;
  bool bijection = true;

  void validate() const;
};

/// Deterministic samples for one epoch: the stream splits seed -> host ->
/// epoch, so any (seed, epoch) pair regenerates identical traffic no matter
/// what was drawn before.
std::vector<TrafficSample> generate_epoch_traffic(const TrafficGenConfig& cfg,
                                                  const Topology& topo, std::uint64_t epoch,
                                                  double epoch_length_s);

}  // namespace hybsched
