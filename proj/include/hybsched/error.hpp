#pragma once

#include <stdexcept>
#include <string>

namespace hybsched {

enum class Errc {
  self_loop,
  not_found,
  invalid_partition,
  no_traffic,
  too_large,
  invalid_config,
  asymmetry,
  invalid_mtu,
  capacity_plan,
  parse,
  usage,
};

/// Domain error carrying a machine-checkable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::self_loop: return "self-loop";
    case Errc::not_found: return "not-found";
    case Errc::invalid_partition: return "invalid-partition";
    case Errc::no_traffic: return "no-traffic";
    case Errc::too_large: return "too-large";
    case Errc::invalid_config: return "invalid-config";
    case Errc::asymmetry: return "asymmetry";
    case Errc::invalid_mtu: return "invalid-mtu";
    case Errc::capacity_plan: return "capacity-plan";
    case Errc::parse: return "parse";
    case Errc::usage: return "usage";
  }
  return "unknown";
}

}  // namespace hybsched
