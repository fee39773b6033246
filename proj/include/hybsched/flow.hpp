#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>

#include "hybsched/error.hpp"

namespace hybsched {

using NodeId = std::string;

/// Unordered host pair naming a flow. Endpoints are stored in canonical
/// (lexicographically ascending) order so FlowId(u,v) == FlowId(v,u).
class FlowId {
 public:
  FlowId(NodeId u, NodeId v) {
    if (u == v) throw Error(Errc::self_loop, "flow endpoints must differ: " + u);
    if (v < u) std::swap(u, v);
    a_ = std::move(u);
    b_ = std::move(v);
  }

  const NodeId& a() const noexcept { return a_; }
  const NodeId& b() const noexcept { return b_; }

  bool contains(const NodeId& n) const { return n == a_ || n == b_; }
  NodeId other(const NodeId& n) const {
    if (n == a_) return b_;
    if (n == b_) return a_;
    throw Error(Errc::not_found, "node " + n + " is not an endpoint of " + str());
  }

  std::string str() const { return a_ + "-" + b_; }

  friend bool operator==(const FlowId& x, const FlowId& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const FlowId& x, const FlowId& y) { return !(x == y); }
  friend bool operator<(const FlowId& x, const FlowId& y) {
    return std::tie(x.a_, x.b_) < std::tie(y.a_, y.b_);
  }

 private:
  NodeId a_, b_;
};

/// One observed traffic record: bytes seen between src and dst during an epoch.
struct TrafficSample {
  std::uint64_t epoch = 0;
  NodeId src;
  NodeId dst;
  std::uint64_t bytes = 0;
};

}  // namespace hybsched
