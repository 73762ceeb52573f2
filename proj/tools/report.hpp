#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcluster/agreement.hpp"
#include "qcluster/sim.hpp"
#include "qcluster/spectral.hpp"

namespace qcluster::cli {

nlohmann::json clusters_json(const Partition& p);

/// Cluster report from the P T zero pattern.
nlohmann::json zero_pattern_report(const SpectralData& s, std::optional<int> h,
                              const AgreementReport& r, const std::vector<std::string>& warnings);

/// Output of `cluster --scan`.
nlohmann::json scan_report(const SpectralData& s, const std::vector<ScanEntry>& entries,
                           double zero_tolerance);

/// Cluster report, method "trajectory". `quasi` is absent when the
/// trajectory is too short to analyze.
nlohmann::json trajectory_report(const SpectralData& s, std::optional<int> h,
                                 const std::vector<int>& required_zero, const Trajectory& tr,
                                 const std::optional<QuasiClusterReport>& quasi,
                                 const std::vector<std::string>& warnings);

/// Eigenvalues at 6 significant digits, ", "-separated; values below
/// zero_tol print as 0.
std::string format_spectrum(const SpectralData& s);

}  // namespace qcluster::cli
