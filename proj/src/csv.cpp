#include "hybsched/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace hybsched {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& path, std::size_t line_no,
                        const char* field) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 10);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(Errc::parse, path + ":" + std::to_string(line_no) + ": bad " + field +
                                 " value '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<TrafficSample> read_flow_stats_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse, "cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  std::vector<TrafficSample> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (split_fields(line) != std::vector<std::string>{"epoch", "src", "dst", "bytes"}) {
        throw Error(Errc::parse, path + ":1: expected header 'epoch,src,dst,bytes'");
      }
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw Error(Errc::parse, path + ":" + std::to_string(line_no) + ": expected 4 fields, got " +
                                   std::to_string(fields.size()));
    }
    TrafficSample s;
    s.epoch = parse_u64(fields[0], path, line_no, "epoch");
    s.src = fields[1];
    s.dst = fields[2];
    s.bytes = parse_u64(fields[3], path, line_no, "bytes");
    if (s.src.empty() || s.dst.empty()) {
      throw Error(Errc::parse, path + ":" + std::to_string(line_no) + ": empty node id");
    }
    if (s.src == s.dst) {
      throw Error(Errc::parse,
                  path + ":" + std::to_string(line_no) + ": self-loop sample " + s.src);
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_flow_stats_csv(const std::string& path, const std::vector<TrafficSample>& samples) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse, "cannot write " + path);
  out << "epoch,src,dst,bytes\n";
  for (const auto& s : samples) {
    out << s.epoch << ',' << s.src << ',' << s.dst << ',' << s.bytes << '\n';
  }
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

void write_metrics_csv(const std::string& path, const ExperimentResults& results) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse, "cannot write " + path);
  out << "strategy,seed,epoch,throughput_bps,config_delay_ms,stability,offloaded\n";
  for (const auto& run : results.runs) {
    for (const auto& m : run.epochs) {
      out << run.strategy << ',' << run.seed << ',' << m.epoch << ','
          << fmt(m.avg_throughput_bps) << ',' << fmt(m.cumulative_config_delay_ms) << ','
          << fmt(m.stability) << ',' << m.offloaded_count << '\n';
    }
  }
}

void write_summary_csv(const std::string& path, const ExperimentResults& results) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse, "cannot write " + path);
  out << "strategy,seeds,mean_throughput_bps,mean_total_config_delay_ms,mean_stability\n";
  std::map<std::string, std::vector<const RunResult*>> by_strategy;
  for (const auto& run : results.runs) by_strategy[run.strategy].push_back(&run);
  for (const auto& [name, runs] : by_strategy) {
    double tput = 0.0, delay = 0.0, stab = 0.0;
    for (const auto* r : runs) {
      tput += r->summary.mean_throughput_bps;
      delay += r->summary.total_config_delay_ms;
      stab += r->summary.mean_stability;
    }
    auto n = static_cast<double>(runs.size());
    out << name << ',' << runs.size() << ',' << fmt(tput / n) << ',' << fmt(delay / n) << ','
        << fmt(stab / n) << '\n';
  }
}

}  // namespace hybsched
