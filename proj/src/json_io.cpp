#include "hybsched/json_io.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hybsched/rng.hpp"

namespace hybsched {

using nlohmann::json;

nlohmann::json topology_to_json(const Topology& topo) {
  json nodes = json::array();
  for (const auto& n : topo.nodes()) {
    nodes.push_back({{"id", n.id}, {"kind", node_kind_name(n.kind)}});
  }
  json links = json::array();
  for (const auto& l : topo.links()) {
    json jl{{"a", l.a}, {"b", l.b}, {"capacity_bps", l.capacity_bps},
            {"kind", link_kind_name(l.kind)}};
    if (l.kind == LinkKind::ocn) jl["wavelengths"] = l.wavelengths;
    links.push_back(std::move(jl));
  }
  return json{{"nodes", std::move(nodes)}, {"links", std::move(links)}};
}

Topology topology_from_json(const json& j) {
  if (j.contains("fig6")) {
    const auto& f = j.at("fig6");
    Fig6Rates rates;
    if (f.contains("host_link_bps")) rates.host_link_bps = f.at("host_link_bps").get<double>();
    if (f.contains("agg_uplink_bps")) rates.agg_uplink_bps = f.at("agg_uplink_bps").get<double>();
    if (f.contains("wavelength_bps")) rates.wavelength_bps = f.at("wavelength_bps").get<double>();
    return build_fig6_topology(f.at("hosts_per_switch").get<int>(),
                               f.at("access_switches").get<int>(),
                               f.at("wavelengths").get<int>(), rates);
  }
  Topology topo;
  for (const auto& n : j.at("nodes")) {
    topo.add_node(n.at("id").get<std::string>(), node_kind_from(n.at("kind").get<std::string>()));
  }
  for (const auto& l : j.at("links")) {
    topo.add_link(l.at("a").get<std::string>(), l.at("b").get<std::string>(),
                  l.at("capacity_bps").get<double>(),
                  link_kind_from(l.at("kind").get<std::string>()),
                  l.value("wavelengths", 0));
  }
  return topo;
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse, "cannot open topology file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
  return topology_from_json(j);
}

nlohmann::json trace_to_json(const EpochTrace& trace) {
  json flows = json::array();
  for (const auto& f : trace.flows) {
    json jf{{"src", f.flow.a()},
            {"dst", f.flow.b()},
            {"delta", f.delta},
            {"delta_prev", f.delta_prev},
            {"kappa", f.kappa},
            {"placement", f.placement == Placement::ocn ? "OCN" : "EPN"}};
    if (f.wavelength) jf["lambda"] = *f.wavelength;
    else jf["lambda"] = nullptr;
    jf["route"] = f.route;
    flows.push_back(std::move(jf));
  }
  json j{{"epoch", trace.epoch},
         {"distance", trace.distance},
         {"exceeded", trace.exceeded},
         {"reason", trace.reason}};
  j["h"] = trace.h ? json(*trace.h) : json(nullptr);
  j["bottleneck"] = trace.bottleneck ? json(*trace.bottleneck) : json(nullptr);
  j["flows"] = flows;
  // Same records ordered by rank, for consumers that only care about the list.
  auto ranked = trace.flows;
  std::stable_sort(ranked.begin(), ranked.end(), [](const TraceFlow& a, const TraceFlow& b) {
    if (a.kappa != b.kappa) return a.kappa > b.kappa;
    if (a.delta != b.delta) return a.delta > b.delta;
    return a.flow < b.flow;
  });
  json rf = json::array();
  for (const auto& f : ranked) {
    rf.push_back({{"src", f.flow.a()},
                  {"dst", f.flow.b()},
                  {"delta", f.delta},
                  {"delta_prev", f.delta_prev},
                  {"kappa", f.kappa},
                  {"placement", f.placement == Placement::ocn ? "OCN" : "EPN"}});
  }
  j["ranked_flows"] = std::move(rf);
  if (!trace.error.empty()) j["error"] = trace.error;
  return j;
}

RunConfig run_config_from_json(const json& j, const std::string& base_dir) {
  RunConfig cfg;
  const auto& t = j.at("topology");
  if (t.is_string()) {
    std::filesystem::path p = t.get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    cfg.topology = load_topology(p.string());
  } else {
    cfg.topology = topology_from_json(t);
  }
  if (j.contains("strategies")) {
    cfg.strategies = j.at("strategies").get<std::vector<std::string>>();
  } else if (j.contains("strategy")) {
    cfg.strategies = {j.at("strategy").get<std::string>()};
  }
  cfg.epochs = j.value("epochs", 2);
  if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("scheduler")) {
    const auto& s = j.at("scheduler");
    auto& c = cfg.scheduler;
    c.val_fraction = s.value("val_fraction", c.val_fraction);
    if (s.contains("val_absolute")) c.val_absolute = s.at("val_absolute").get<double>();
    c.k = s.value("k", c.k);
    c.max_offloads_per_epoch = s.value("max_offloads_per_epoch", c.max_offloads_per_epoch);
    c.wavelengths_per_link = s.value("wavelengths_per_link", c.wavelengths_per_link);
    c.setup_delay_s = s.value("setup_delay_s", c.setup_delay_s);
    c.epoch_length_s = s.value("epoch_length_s", c.epoch_length_s);
  }
  if (j.contains("traffic")) {
    const auto& t2 = j.at("traffic");
    auto& c = cfg.traffic;
    c.arrival_rate_per_host = t2.value("rate_per_host", c.arrival_rate_per_host);
    c.sigma = t2.value("sigma", c.sigma);
    c.mu = t2.value("mu", c.mu);
    c.byte_scale = t2.value("byte_scale", c.byte_scale);
    c.seed = t2.value("seed", c.seed);
    c.bijection = t2.value("bijection", c.bijection);
  }
  cfg.output = j.value("output", cfg.output);
  cfg.scheduler.validate();
  cfg.traffic.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse, "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
  try {
    return run_config_from_json(j, std::filesystem::path(path).parent_path().string());
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
}

nlohmann::json results_to_json(const ExperimentResults& results, const std::string& config_hash) {
  json runs = json::array();
  for (const auto& run : results.runs) {
    json epochs = json::array();
    for (const auto& m : run.epochs) {
      json util = json::object();
      for (const auto& [link, u] : m.per_link_utilization) util[link.str()] = u;
      epochs.push_back({{"epoch", m.epoch},
                        {"avg_throughput_bps", m.avg_throughput_bps},
                        {"cumulative_config_delay_ms", m.cumulative_config_delay_ms},
                        {"stability", m.stability},
                        {"offloaded_count", m.offloaded_count},
                        {"per_link_utilization", std::move(util)}});
    }
    runs.push_back({{"strategy", run.strategy},
                    {"seed", run.seed},
                    {"epochs", std::move(epochs)},
                    {"summary",
                     {{"mean_throughput_bps", run.summary.mean_throughput_bps},
                      {"total_config_delay_ms", run.summary.total_config_delay_ms},
                      {"mean_stability", run.summary.mean_stability}}}});
  }
  return json{{"version", kVersion}, {"config_hash", config_hash}, {"runs", std::move(runs)}};
}

std::string json_hash(const json& j) {
  std::uint64_t h = fnv1a64(j.dump());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace hybsched
