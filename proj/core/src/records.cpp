#include "canopy/records.hpp"

#include <charconv>
#include <ostream>

#include <nlohmann/json.hpp>

#include "canopy/leaf_address.hpp"

namespace canopy {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records)
    os << r.model << ',' << r.b << ',' << r.size << ',' << format_double(r.lambda) << ','
       << r.replicate << ',' << r.seed << ',' << r.cluster_size << ',' << r.edges << ','
       << (r.connected ? 1 : 0) << ',' << r.isolated << ',' << (r.truncated ? 1 : 0) << '\n';
}

void write_json(std::ostream& os, const std::vector<SweepRecord>& records,
                std::uint64_t master_seed) {
  nlohmann::ordered_json root = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    root.push_back({{"model", r.model},
                    {"b", r.b},
                    {"size", r.size},
                    {"lambda", r.lambda},
                    {"replicate", r.replicate},
                    {"seed", r.seed},
                    {"cluster_size", r.cluster_size},
                    {"edges", r.edges},
                    {"connected", r.connected},
                    {"isolated", r.isolated},
                    {"truncated", r.truncated}});
  }
  root.push_back({{"meta", true},
                  {"master_seed", master_seed},
                  {"version", "0.1.0"},
                  {"records", records.size()}});
  os << root.dump(2) << '\n';
}

void dump_graph(std::ostream& os, const RootedMultiGraph& g, int b, int n) {
  auto name = [&](int v) {
    if (!g.labels.empty()) return g.labels[static_cast<std::size_t>(v)].to_string();
    return leaf_from_index(static_cast<std::uint64_t>(v), b).to_string();
  };
  os << b << ' ' << n << ' ' << name(g.root) << '\n';
  for (const auto& e : g.edges)
    os << name(e.u) << ' ' << name(e.v) << ' ' << e.mult << '\n';
}

}  // namespace canopy
