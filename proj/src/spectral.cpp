#include "hybsched/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "hybsched/eigensolver.hpp"

namespace hybsched {

namespace {

constexpr double kDenominatorFloor = 1e-15;

void check_order(const TrafficGraph& g, const std::vector<NodeId>& node_order) {
  if (node_order.size() != g.node_count()) {
    throw Error(Errc::invalid_config, "node order size does not match graph");
  }
  std::set<NodeId> seen;
  for (const auto& n : node_order) {
    if (!g.has_node(n)) throw Error(Errc::not_found, "node " + n + " not in graph");
    if (!seen.insert(n).second) {
      throw Error(Errc::invalid_config, "node order repeats " + n);
    }
  }
}

}  // namespace

std::vector<NodeId> sorted_nodes(const TrafficGraph& g) {
  return {g.nodes().begin(), g.nodes().end()};
}

LaplacianMatrix weighted_laplacian(const TrafficGraph& g, const std::vector<NodeId>& node_order) {
  check_order(g, node_order);
  const Eigen::Index n = static_cast<Eigen::Index>(node_order.size());
  LaplacianMatrix lap;
  lap.kind = LaplacianKind::weighted;
  lap.order = node_order;
  lap.entries = Eigen::MatrixXd::Zero(n, n);
  std::map<NodeId, Eigen::Index> idx;
  for (Eigen::Index i = 0; i < n; ++i) idx[node_order[static_cast<std::size_t>(i)]] = i;
  for (const auto& [f, w] : g.edges()) {
    Eigen::Index i = idx.at(f.a());
    Eigen::Index j = idx.at(f.b());
    lap.entries(i, j) = lap.entries(j, i) = -w;
    lap.entries(i, i) += w;
    lap.entries(j, j) += w;
  }
  return lap;
}

LaplacianMatrix normalized_laplacian(const TrafficGraph& g,
                                     const std::vector<NodeId>& node_order) {
  check_order(g, node_order);
  const Eigen::Index n = static_cast<Eigen::Index>(node_order.size());
  LaplacianMatrix lap;
  lap.kind = LaplacianKind::normalized;
  lap.order = node_order;
  lap.entries = Eigen::MatrixXd::Zero(n, n);
  std::map<NodeId, Eigen::Index> idx;
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) idx[node_order[static_cast<std::size_t>(i)]] = i;
  for (const auto& [f, w] : g.edges()) {
    deg(idx.at(f.a())) += w;
    deg(idx.at(f.b())) += w;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    lap.entries(i, i) = deg(i) > 0.0 ? 1.0 : 0.0;  // isolated nodes stay zero
  }
  for (const auto& [f, w] : g.edges()) {
    Eigen::Index i = idx.at(f.a());
    Eigen::Index j = idx.at(f.b());
    double v = -w / std::sqrt(deg(i) * deg(j));
    lap.entries(i, j) = lap.entries(j, i) = v;
  }
  return lap;
}

SpectralSignature signature_of(const TrafficGraph& g, int k, const std::string& source) {
  if (k < 1) throw Error(Errc::invalid_config, "spectral truncation k must be >= 1");
  SpectralSignature sig;
  sig.k = k;
  sig.source = source;
  auto lap = weighted_laplacian(g, sorted_nodes(g));
  auto eig = symmetric_eigenvalues(lap.entries);
  std::size_t keep = std::min<std::size_t>(eig.size(), static_cast<std::size_t>(k));
  sig.values.assign(eig.begin(), eig.begin() + static_cast<std::ptrdiff_t>(keep));
  return sig;
}

double spectral_distance(const SpectralSignature& a, const SpectralSignature& b) {
  std::size_t len = std::max(a.values.size(), b.values.size());
  auto padded = [len](const std::vector<double>& v) {
    std::vector<double> out(len, 0.0);
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(len - v.size()));
    return out;
  };
  std::vector<double> x = padded(a.values);
  std::vector<double> y = padded(b.values);
  double num = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    double d = x[i] - y[i];
    num += d * d;
    sx += x[i] * x[i];
    sy += y[i] * y[i];
  }
  double denom = std::min(sx, sy);
  if (denom < kDenominatorFloor) {
    return num < kDenominatorFloor ? 0.0 : kSpectralSaturation;
  }
  return std::sqrt(num / denom);
}

double flow_spectral_distance(const TrafficGraph& g, const TrafficGraph& g1, const FlowId& flow,
                              int k, DistanceMode mode) {
  if (!g.has_node(flow.a()) && !g.has_node(flow.b()) && !g1.has_node(flow.a()) &&
      !g1.has_node(flow.b())) {
    throw Error(Errc::not_found, "flow " + flow.str() + " absent from both graphs");
  }
  if (mode == DistanceMode::edge_weight_legacy) {
    // Single-edge subgraph: spectra {0, 2w} vs {0, 2w'}, denominator the
    // smaller raw weight. Ignores everything around the flow.
    double w = g.weight(flow);
    double w1 = g1.weight(flow);
    double d = 2.0 * (w - w1);
    double num = d * d;
    double denom = std::min(w, w1);
    if (denom < kDenominatorFloor) {
      return num < kDenominatorFloor ? 0.0 : kSpectralSaturation;
    }
    return std::sqrt(num / denom);
  }
  auto neighborhood = [&](const TrafficGraph& graph) {
    std::set<NodeId> keep{flow.a(), flow.b()};
    if (graph.has_node(flow.a())) {
      for (const auto& n : graph.neighbors(flow.a())) keep.insert(n);
    }
    if (graph.has_node(flow.b())) {
      for (const auto& n : graph.neighbors(flow.b())) keep.insert(n);
    }
    return induced_subgraph(graph, keep);
  };
  SpectralSignature sa = signature_of(neighborhood(g), k, flow.str());
  SpectralSignature sb = signature_of(neighborhood(g1), k, flow.str());
  return spectral_distance(sa, sb);
}

double estimate_duration(const FlowDurationModel& m) {
  if (m.mtu_bytes <= 0.0) throw Error(Errc::invalid_mtu, "mtu must be > 0");
  if (m.volume_bytes < 0.0) throw Error(Errc::invalid_config, "volume must be >= 0");
  double total_service = 0.0;
  for (double z : m.service_s) {
    if (z < 0.0) throw Error(Errc::invalid_config, "service times must be >= 0");
    total_service += z;
  }
  return (m.volume_bytes / m.mtu_bytes) * total_service;
}

}  // namespace hybsched
