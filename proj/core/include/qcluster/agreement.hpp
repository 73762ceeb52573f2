#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qcluster/spectral.hpp"

namespace qcluster {

/// Disjoint clusters covering {1..N}, each sorted, ordered by smallest member.
struct Partition {
  std::vector<std::vector<int>> clusters;

  int alpha() const noexcept { return static_cast<int>(clusters.size()); }
  bool operator==(const Partition&) const = default;
};

/// Cyclic difference matrix: row i is e_i - e_{i+1}, the last row e_N - e_1.
Eigen::MatrixXd gamma(int n);

/// Minimal solution P = Gamma L+ of P L = Gamma. Throws PreconditionError for
/// a disconnected graph.
Eigen::MatrixXd compute_P(const SpectralData& s);

Eigen::MatrixXd compute_PT(const Eigen::MatrixXd& p, const SpectralData& s);

/// Mass of a row of PT (or of p T for any p with p L = e_i - e_j) on the
/// required-zero columns Z (1-indexed modes). Columns of a repeated eigenvalue
/// contribute the Euclidean norm of their block, which does not depend on
/// the basis chosen inside the eigenspace. The result is the largest such
/// per-eigenvalue mass.
double z_mass(const Eigen::Ref<const Eigen::RowVectorXd>& row, const SpectralData& s,
              const std::vector<int>& z);

/// Default zero tolerance: 1e-6 times the largest |PT| entry.
double default_zero_tolerance(const Eigen::MatrixXd& pt);

/// Entry i (0-based) is whether agents i+1 and i+2 agree; the last entry is
/// the pair (N, 1).
std::vector<bool> consecutive_agreements(const Eigen::MatrixXd& pt, const SpectralData& s,
                                         const std::vector<int>& z, double zero_tolerance);

/// Agreement of 1-indexed agents i and j. Always true for i == j.
bool pair_agreement(int i, int j, const SpectralData& s, const std::vector<int>& z,
                    double zero_tolerance);

/// Symmetric reflexive N x N relation from the all-pairs test.
std::vector<std::vector<bool>> agreement_relation(const SpectralData& s, const std::vector<int>& z,
                                                  double zero_tolerance);

/// Connected components of an agreement relation.
Partition extract_clusters(const std::vector<std::vector<bool>>& pairs);

struct AgreementReport {
  Eigen::MatrixXd P;
  Eigen::MatrixXd PT;
  double zero_tolerance = 0.0;
  std::vector<int> required_zero;
  std::vector<bool> consecutive;
  std::vector<std::vector<bool>> pairs;
  Partition partition;

  /// Agreeing pairs (i < j), 1-indexed.
  std::vector<std::pair<int, int>> agreement_pairs() const;
};

/// Full pipeline for a required-zero set. `zero_tolerance` defaults to
/// default_zero_tolerance(PT).
AgreementReport analyze_agreement(const SpectralData& s, std::vector<int> z,
                                  std::optional<double> zero_tolerance = std::nullopt);

/// Z = {2, ..., h-1}.
std::vector<int> required_zero_for_h(int h);

struct ScanEntry {
  std::vector<int> h_values;  // ascending, all h producing `partition`
  Partition partition;
};

/// Partitions for every hypothetical h in 2..N, merged so each distinct
/// partition appears once, ordered by its smallest h. Values of h that would
/// split a repeated eigenvalue (lambda_{h-1} == lambda_h) are skipped since no
/// gain pair can realize them.
std::vector<ScanEntry> scan_h(const SpectralData& s,
                              std::optional<double> zero_tolerance = std::nullopt);

}  // namespace qcluster
