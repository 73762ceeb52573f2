#include "report.hpp"

#include <cstdio>

namespace qcluster::cli {

using nlohmann::json;

namespace {

json eigenvalues_json(const SpectralData& s) {
  json out = json::array();
  for (int k = 0; k < s.n(); ++k) out.push_back(s.eigenvalues(k) < s.zero_tol ? 0.0 : s.eigenvalues(k));
  return out;
}

json h_json(std::optional<int> h) { return h ? json(*h) : json(nullptr); }

}  // namespace

json clusters_json(const Partition& p) {
  json out = json::array();
  for (const auto& c : p.clusters) out.push_back(c);
  return out;
}

json zero_pattern_report(const SpectralData& s, std::optional<int> h, const AgreementReport& r,
                    const std::vector<std::string>& warnings) {
  json pairs = json::array();
  for (const auto& [i, j] : r.agreement_pairs()) pairs.push_back({i, j});
  return {
      {"n", s.n()},
      {"h", h_json(h)},
      {"eigenvalues", eigenvalues_json(s)},
      {"required_zero_columns", r.required_zero},
      {"zero_tolerance", r.zero_tolerance},
      {"agreement_pairs", pairs},
      {"clusters", clusters_json(r.partition)},
      {"method", "theorem1"},
      {"warnings", warnings},
  };
}

json scan_report(const SpectralData& s, const std::vector<ScanEntry>& entries, double zero_tolerance) {
  json partitions = json::array();
  for (const auto& e : entries) {
    partitions.push_back({{"h", e.h_values.front()},
                          {"h_values", e.h_values},
                          {"clusters", clusters_json(e.partition)}});
  }
  return {
      {"n", s.n()},
      {"eigenvalues", eigenvalues_json(s)},
      {"zero_tolerance", zero_tolerance},
      {"partitions", partitions},
      {"method", "theorem1"},
  };
}

json trajectory_report(const SpectralData& s, std::optional<int> h, const std::vector<int>& required_zero,
                       const Trajectory& tr, const std::optional<QuasiClusterReport>& quasi,
                       const std::vector<std::string>& warnings) {
  json report = {
      {"n", s.n()},
      {"h", h_json(h)},
      {"eigenvalues", eigenvalues_json(s)},
      {"required_zero_columns", required_zero},
      {"zero_tolerance", nullptr},
      {"method", "trajectory"},
      {"truncated", tr.truncated},
      {"final_time", tr.times.back()},
      {"warnings", warnings},
  };
  if (!quasi) {
    report["agreement_pairs"] = nullptr;
    report["clusters"] = nullptr;
    report["gap_ratio"] = nullptr;
    report["evaluation_time"] = nullptr;
    return report;
  }
  json pairs = json::array();
  for (const auto& c : quasi->partition.clusters)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) pairs.push_back({c[a], c[b]});
  std::sort(pairs.begin(), pairs.end());
  report["agreement_pairs"] = pairs;
  report["clusters"] = clusters_json(quasi->partition);
  report["gap_ratio"] = quasi->gap_ratio;
  report["evaluation_time"] = quasi->evaluation_time;
  return report;
}

std::string format_spectrum(const SpectralData& s) {
  std::string out;
  char buf[32];
  for (int k = 0; k < s.n(); ++k) {
    const double v = s.eigenvalues(k) < s.zero_tol ? 0.0 : s.eigenvalues(k);
    std::snprintf(buf, sizeof buf, "%.6g", v);
    if (k) out += ", ";
    out += buf;
  }
  return out;
}

}  // namespace qcluster::cli
