#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hybsched/traffic_graph.hpp"

namespace hybsched {

enum class LaplacianKind { weighted, normalized };

/// Symmetric Laplacian of a traffic graph under a fixed node order.
struct LaplacianMatrix {
  Eigen::MatrixXd entries;
  LaplacianKind kind = LaplacianKind::weighted;
  std::vector<NodeId> order;

  Eigen::Index size() const { return entries.rows(); }
};

/// L = D - A: diagonal carries weighted degrees, off-diagonals -w(u,v).
LaplacianMatrix weighted_laplacian(const TrafficGraph& g, const std::vector<NodeId>& node_order);

/// Degree-normalized form: unit diagonal for traffic-bearing nodes, zero for
/// isolated ones, off-diagonals -w(u,v)/sqrt(d_u d_v).
LaplacianMatrix normalized_laplacian(const TrafficGraph& g, const std::vector<NodeId>& node_order);

/// Sorted ascending node order for g (the default order everywhere).
std::vector<NodeId> sorted_nodes(const TrafficGraph& g);

}  // namespace hybsched
