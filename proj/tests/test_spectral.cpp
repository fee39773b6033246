#include "doctest.h"

#include <deque>

#include "hybsched/eigensolver.hpp"
#include "hybsched/spectral.hpp"
#include "oracles.hpp"

using namespace hybsched;

namespace {

bool traffic_connected(const TrafficGraph& g) {
  if (g.node_count() == 0) return true;
  std::set<NodeId> seen{*g.nodes().begin()};
  std::deque<NodeId> q{*g.nodes().begin()};
  while (!q.empty()) {
    auto n = q.front();
    q.pop_front();
    for (const auto& m : g.neighbors(n)) {
      if (seen.insert(m).second) q.push_back(m);
    }
  }
  return seen.size() == g.node_count();
}

TrafficGraph random_connected_graph(SplitMix64& rng, int n, double max_weight) {
  TrafficGraph g;
  std::vector<NodeId> names;
  for (int i = 0; i < n; ++i) {
    NodeId id = "n" + std::to_string(i);
    g.add_node(id);
    names.push_back(id);
  }
  for (int i = 1; i < n; ++i) {
    auto j = rng.below(static_cast<std::uint64_t>(i));
    g.set_weight(names[static_cast<std::size_t>(i)], names[j],
                 1.0 + rng.uniform() * (max_weight - 1.0));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.weight(names[i], names[j]) == 0.0 && rng.uniform() < 0.3) {
        g.set_weight(names[i], names[j], 1.0 + rng.uniform() * (max_weight - 1.0));
      }
    }
  }
  return g;
}

}  // namespace

TEST_CASE("weighted laplacian closed forms") {
  TrafficGraph k2;
  k2.set_weight("u", "v", 5.0);
  auto lap = weighted_laplacian(k2, {"u", "v"});
  CHECK(lap.entries(0, 0) == doctest::Approx(5.0));
  CHECK(lap.entries(0, 1) == doctest::Approx(-5.0));
  CHECK(lap.entries(1, 1) == doctest::Approx(5.0));

  TrafficGraph empty;
  empty.add_node("a");
  empty.add_node("b");
  empty.add_node("c");
  auto zero = weighted_laplacian(empty, {"a", "b", "c"});
  CHECK(zero.entries.norm() == doctest::Approx(0.0));
}

TEST_CASE("weighted laplacian equals D - A entrywise") {
  SplitMix64 rng(7);
  auto g = oracle::random_graph(rng, 5, 0.7, 25.0);
  std::vector<NodeId> order(g.nodes().begin(), g.nodes().end());
  auto a = oracle::adjacency_matrix(g, order);
  Eigen::MatrixXd d = a.rowwise().sum().asDiagonal();
  auto lap = weighted_laplacian(g, order);
  CHECK((lap.entries - (d - a)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("normalized laplacian closed forms and conventions") {
  TrafficGraph k2;
  k2.set_weight("u", "v", 17.0);
  auto lap = normalized_laplacian(k2, {"u", "v"});
  CHECK(lap.entries(0, 0) == doctest::Approx(1.0));
  CHECK(lap.entries(0, 1) == doctest::Approx(-1.0));
  auto eig = symmetric_eigenvalues(lap.entries);
  CHECK(eig[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(eig[1] == doctest::Approx(2.0));

  TrafficGraph with_isolated = k2;
  with_isolated.add_node("z");
  auto lap3 = normalized_laplacian(with_isolated, {"u", "v", "z"});
  CHECK(lap3.entries.row(2).norm() == doctest::Approx(0.0));
  CHECK(lap3.entries.col(2).norm() == doctest::Approx(0.0));
}

TEST_CASE("normalized laplacian matches the similarity transform on a path") {
  TrafficGraph p3;
  p3.set_weight("a", "b", 3.0);
  p3.set_weight("b", "c", 11.0);
  std::vector<NodeId> order{"a", "b", "c"};
  auto a = oracle::adjacency_matrix(p3, order);
  Eigen::VectorXd deg = a.rowwise().sum();
  Eigen::MatrixXd l = Eigen::MatrixXd(deg.asDiagonal()) - a;
  Eigen::MatrixXd dinv_sqrt = deg.cwiseInverse().cwiseSqrt().asDiagonal();
  Eigen::MatrixXd expected = dinv_sqrt * l * dinv_sqrt;
  auto lap = normalized_laplacian(p3, order);
  CHECK((lap.entries - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("eigensolver closed forms") {
  CHECK(symmetric_eigenvalues(Eigen::MatrixXd::Identity(2, 2)) == std::vector<double>{1.0, 1.0});

  TrafficGraph k2;
  k2.set_weight("u", "v", 3.0);
  auto eig = symmetric_eigenvalues(weighted_laplacian(k2, {"u", "v"}).entries);
  CHECK(eig[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(6.0));

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 3.0, 1.0;
  CHECK_THROWS_AS(symmetric_eigenvalues(bad), Error);
}

TEST_CASE("eigensolver matches characteristic polynomial bracketing") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd m(6, 6);
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) {
        m(i, j) = m(j, i) = rng.uniform() * 2.0 - 1.0;
      }
    }
    auto jacobi = symmetric_eigenvalues(m);
    auto roots = oracle::charpoly_roots(m);
    REQUIRE(roots.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(jacobi[i] == doctest::Approx(roots[i]).epsilon(0).scale(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("laplacian spectra are positive semidefinite and trace-consistent") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.below(9));
    auto g = trial % 2 == 0 ? oracle::random_graph(rng, n, 0.5, 40.0)
                            : random_connected_graph(rng, n, 40.0);
    auto order = sorted_nodes(g);
    auto wl = weighted_laplacian(g, order);
    auto nl = normalized_laplacian(g, order);
    auto we = symmetric_eigenvalues(wl.entries);
    auto ne = symmetric_eigenvalues(nl.entries);
    double wsum = 0.0, nsum = 0.0;
    for (double v : we) {
      CHECK(v >= -1e-8);
      wsum += v;
    }
    for (double v : ne) {
      CHECK(v >= -1e-8);
      CHECK(v <= 2.0 + 1e-8);
      nsum += v;
    }
    CHECK(wsum == doctest::Approx(wl.entries.trace()).epsilon(1e-8));
    CHECK(nsum == doctest::Approx(nl.entries.trace()).epsilon(1e-8));
    if (traffic_connected(g) && g.node_count() >= 2) {
      int near_zero = 0;
      for (double v : we) {
        if (std::abs(v) <= 1e-8 * std::max(1.0, wl.entries.trace())) ++near_zero;
      }
      CHECK(near_zero == 1);
    }
  }
}

TEST_CASE("spectral distance examples") {
  SpectralSignature a{{0.0, 2.0}, 20, ""};
  SpectralSignature b{{0.0, 1.0}, 20, ""};
  CHECK(spectral_distance(a, b) == doctest::Approx(1.0));
  CHECK(spectral_distance(a, a) == doctest::Approx(0.0));
  CHECK(spectral_distance(a, b) == spectral_distance(b, a));

  SpectralSignature zero{{0.0, 0.0}, 20, ""};
  CHECK(spectral_distance(a, zero) == doctest::Approx(kSpectralSaturation));
  CHECK(spectral_distance(zero, zero) == doctest::Approx(0.0));
}

TEST_CASE("padding matches the isolated-node convention") {
  TrafficGraph k2;
  k2.set_weight("u", "v", 4.0);
  TrafficGraph p3;
  p3.set_weight("a", "b", 2.0);
  p3.set_weight("b", "c", 6.0);
  auto short_sig = signature_of(k2, 20);
  auto long_sig = signature_of(p3, 20);
  TrafficGraph k2_padded = k2;
  k2_padded.add_node("w");
  auto padded_sig = signature_of(k2_padded, 20);
  CHECK(spectral_distance(short_sig, long_sig) ==
        doctest::Approx(spectral_distance(padded_sig, long_sig)).epsilon(1e-12));
}

TEST_CASE("flow distance: unchanged neighborhood gives zero") {
  TrafficGraph g;
  g.set_weight("a", "b", 4.0);
  g.set_weight("b", "c", 2.0);
  g.set_weight("c", "d", 9.0);
  CHECK(flow_spectral_distance(g, g, FlowId("a", "b"), 20) == doctest::Approx(0.0));
}

TEST_CASE("flow distance: doubled isolated edge equals the K2 closed form") {
  double w = 7.0;
  TrafficGraph g, g1;
  g.set_weight("u", "v", w);
  g1.set_weight("u", "v", 2.0 * w);
  SpectralSignature sa{{0.0, 2.0 * w}, 20, ""};
  SpectralSignature sb{{0.0, 4.0 * w}, 20, ""};
  double expected = spectral_distance(sa, sb);
  CHECK(expected == doctest::Approx(1.0));
  CHECK(flow_spectral_distance(g, g1, FlowId("u", "v"), 20) == doctest::Approx(expected));
}

TEST_CASE("flow distance: the tripled flow dominates every other flow") {
  // The hot flow's neighborhood is disjoint from the stable flows, so only
  // its own subgraph spectra move between the epochs.
  TrafficGraph g;
  g.set_weight("h0", "h1", 5.0);
  g.set_weight("h2", "h3", 7.0);
  g.set_weight("h3", "h4", 4.0);
  g.set_weight("h4", "h5", 6.0);
  TrafficGraph g1 = g;
  g1.set_weight("h0", "h1", 15.0);
  FlowId hot("h0", "h1");
  double hot_distance = flow_spectral_distance(g, g1, hot, 20);
  CHECK(hot_distance == doctest::Approx(2.0));  // {0,10} vs {0,30}
  for (const auto& [flow, w] : g.edges()) {
    if (flow == hot) continue;
    CHECK(flow_spectral_distance(g, g1, flow, 20) < hot_distance);
  }
}

TEST_CASE("flow distance: absent endpoints raise not-found") {
  TrafficGraph g;
  g.set_weight("a", "b", 1.0);
  CHECK_THROWS_AS(flow_spectral_distance(g, g, FlowId("x", "y"), 20), Error);
}

TEST_CASE("legacy mode scores raw weight change against the smaller weight") {
  TrafficGraph g, g1;
  g.set_weight("u", "v", 4.0);
  g1.set_weight("u", "v", 9.0);
  // spectra {0,8} vs {0,18}: sqrt(100 / min(4,9)) = 5
  CHECK(flow_spectral_distance(g, g1, FlowId("u", "v"), 20,
                               DistanceMode::edge_weight_legacy) == doctest::Approx(5.0));
  TrafficGraph empty;
  empty.add_node("u");
  empty.add_node("v");
  CHECK(flow_spectral_distance(empty, g1, FlowId("u", "v"), 20,
                               DistanceMode::edge_weight_legacy) ==
        doctest::Approx(kSpectralSaturation));
}

TEST_CASE("signature perturbation responds linearly to edge changes") {
  SplitMix64 rng(55);
  auto g = random_connected_graph(rng, 8, 30.0);
  auto base = signature_of(g, 20);
  FlowId edge = g.edges().begin()->first;
  double w = g.edges().begin()->second;
  auto response = [&](double eps) {
    TrafficGraph p = g;
    p.set_weight(edge.a(), edge.b(), w * (1.0 + eps));
    auto sig = signature_of(p, 20);
    double sum = 0.0;
    for (std::size_t i = 0; i < sig.values.size(); ++i) {
      double d = sig.values[i] - base.values[i];
      sum += d * d;
    }
    return std::sqrt(sum);
  };
  double r3 = response(1e-3);
  double r4 = response(1e-4);
  CHECK(r3 > 0.0);
  CHECK(r4 > 0.0);
  double ratio = r3 / r4;
  CHECK(ratio > 5.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("duration model arithmetic") {
  CHECK(estimate_duration({0.0, 1500.0, {0.5}}) == doctest::Approx(0.0));
  CHECK(estimate_duration({1500.0, 1500.0, {0.001}}) == doctest::Approx(0.001));
  CHECK(estimate_duration({1e6, 1500.0, {0.0002, 0.0003}}) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(estimate_duration({1.0, 0.0, {}}), Error);
}
