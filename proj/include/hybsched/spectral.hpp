#pragma once

#include <string>
#include <vector>

#include "hybsched/laplacian.hpp"

namespace hybsched {

constexpr int kDefaultSpectralK = 20;
constexpr double kSpectralSaturation = 1e6;

/// Truncated spectral fingerprint: the k smallest weighted-Laplacian
/// eigenvalues of a (sub)graph, ascending. Holds min(k, n) values.
struct SpectralSignature {
  std::vector<double> values;
  int k = kDefaultSpectralK;
  std::string source;
};

SpectralSignature signature_of(const TrafficGraph& g, int k, const std::string& source = "");

/// Normalized Euclidean gap between two signatures:
/// sqrt(sum (a_i - b_i)^2 / min(sum a_i^2, sum b_i^2)). The shorter signature
/// is padded with zeros (the isolated-node convention), which aligns the two
/// spectra at their upper ends. Degenerate denominators saturate instead of
/// dividing by zero.
double spectral_distance(const SpectralSignature& a, const SpectralSignature& b);

enum class DistanceMode {
  neighborhood,        // closed 1-hop neighborhood subgraph around the flow
  edge_weight_legacy,  // single-edge subgraph, min-weight denominator
};

/// Spectral distance a flow contributes between two epoch graphs, evaluated
/// on its endpoint-neighborhood subgraphs in each graph.
double flow_spectral_distance(const TrafficGraph& g, const TrafficGraph& g1, const FlowId& flow,
                              int k, DistanceMode mode = DistanceMode::neighborhood);

/// Volume, transmission unit and source-queue service times of one flow.
struct FlowDurationModel {
  double volume_bytes = 0.0;       // Gamma
  double mtu_bytes = 1500.0;       // W
  std::vector<double> service_s;   // zeta per queue occupant
};

/// Expected drain time: (volume / mtu) * sum of service times.
double estimate_duration(const FlowDurationModel& m);

}  // namespace hybsched
