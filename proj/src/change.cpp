#include "hybsched/change.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace hybsched {

ChangeReport graph_distance(const TrafficGraph& g, const TrafficGraph& g1) {
  ChangeReport r;
  std::set<FlowId> pairs;
  for (const auto& [f, w] : g.edges()) pairs.insert(f);
  for (const auto& [f, w] : g1.edges()) pairs.insert(f);
  for (const auto& f : pairs) {
    double w = g.weight(f);
    double w1 = g1.weight(f);
    double hi = std::max(w, w1);
    if (hi <= 0.0) continue;
    double term = std::abs(w - w1) / hi;
    r.per_edge[f] = term;
    r.total_distance += term;
    r.max_term = std::max(r.max_term, term);
  }
  return r;
}

bool change_exceeds(const ChangeReport& report, double val) {
  if (val < 0.0) throw Error(Errc::invalid_config, "change threshold must be >= 0");
  return report.total_distance > val;
}

}  // namespace hybsched
