#include "qcluster/agreement.hpp"

#include <algorithm>
#include <cmath>

#include "qcluster/error.hpp"

namespace qcluster {

namespace {

// Z grouped by eigenvalue block, as 0-based column indices.
std::vector<std::vector<int>> z_blocks(const SpectralData& s, const std::vector<int>& z) {
  std::vector<std::vector<int>> out;
  for (const auto& block : eigenvalue_blocks(s)) {
    std::vector<int> cols;
    for (const int c : block)
      if (std::find(z.begin(), z.end(), c + 1) != z.end()) cols.push_back(c);
    if (!cols.empty()) out.push_back(std::move(cols));
  }
  return out;
}

double block_mass(const Eigen::Ref<const Eigen::RowVectorXd>& row,
                  const std::vector<std::vector<int>>& blocks) {
  double mass = 0.0;
  for (const auto& block : blocks) {
    double sq = 0.0;
    for (const int c : block) sq += row(c) * row(c);
    mass = std::max(mass, std::sqrt(sq));
  }
  return mass;
}

void require_connected(const SpectralData& s) {
  if (zero_eigenvalue_count(s) != 1) {
    throw PreconditionError(
        "graph is disconnected: the Laplacian has " + std::to_string(zero_eigenvalue_count(s)) +
        " zero eigenvalues, and agents in different components never agree");
  }
}

void check_pair(int i, int n) {
  if (i < 1 || i > n) throw InputError("agent index " + std::to_string(i) + " out of range");
}

}  // namespace

Eigen::MatrixXd gamma(int n) {
  if (n < 2) throw InputError("Gamma needs N >= 2");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    g(i, i) = 1.0;
    g(i, i + 1) = -1.0;
  }
  g(n - 1, 0) = -1.0;
  g(n - 1, n - 1) = 1.0;
  return g;
}

Eigen::MatrixXd compute_P(const SpectralData& s) {
  require_connected(s);
  return gamma(s.n()) * s.pseudoinverse;
}

Eigen::MatrixXd compute_PT(const Eigen::MatrixXd& p, const SpectralData& s) { return p * s.basis; }

double z_mass(const Eigen::Ref<const Eigen::RowVectorXd>& row, const SpectralData& s,
              const std::vector<int>& z) {
  return block_mass(row, z_blocks(s, z));
}

double default_zero_tolerance(const Eigen::MatrixXd& pt) { return 1e-6 * pt.cwiseAbs().maxCoeff(); }

std::vector<bool> consecutive_agreements(const Eigen::MatrixXd& pt, const SpectralData& s,
                                         const std::vector<int>& z, double zero_tolerance) {
  const auto blocks = z_blocks(s, z);
  std::vector<bool> out;
  for (Eigen::Index i = 0; i < pt.rows(); ++i)
    out.push_back(block_mass(pt.row(i), blocks) < zero_tolerance);
  return out;
}

bool pair_agreement(int i, int j, const SpectralData& s, const std::vector<int>& z,
                    double zero_tolerance) {
  require_connected(s);
  check_pair(i, s.n());
  check_pair(j, s.n());
  if (i == j) return true;
  // p = (e_i - e_j)^T L+ solves p L = e_i - e_j on a connected graph.
  const Eigen::RowVectorXd p = s.pseudoinverse.row(i - 1) - s.pseudoinverse.row(j - 1);
  const Eigen::RowVectorXd pt = p * s.basis;
  return z_mass(pt, s, z) < zero_tolerance;
}

std::vector<std::vector<bool>> agreement_relation(const SpectralData& s, const std::vector<int>& z,
                                                  double zero_tolerance) {
  require_connected(s);
  const int n = s.n();
  const auto blocks = z_blocks(s, z);
  // Row i of L+ T; pair rows are differences of these.
  const Eigen::MatrixXd lt = s.pseudoinverse * s.basis;
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    rel[i][i] = true;
    for (int j = i + 1; j < n; ++j) {
      const Eigen::RowVectorXd row = lt.row(i) - lt.row(j);
      rel[i][j] = rel[j][i] = block_mass(row, blocks) < zero_tolerance;
    }
  }
  return rel;
}

Partition extract_clusters(const std::vector<std::vector<bool>>& pairs) {
  const int n = static_cast<int>(pairs.size());
  std::vector<int> label(n, -1);
  Partition out;
  for (int root = 0; root < n; ++root) {
    if (label[root] >= 0) continue;
    std::vector<int> members;
    std::vector<int> stack{root};
    label[root] = root;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      members.push_back(u + 1);
      for (int v = 0; v < n; ++v) {
        if (label[v] < 0 && (pairs[u][v] || pairs[v][u])) {
          label[v] = root;
          stack.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.clusters.push_back(std::move(members));
  }
  return out;
}

std::vector<std::pair<int, int>> AgreementReport::agreement_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (pairs[i][j]) out.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
  return out;
}

AgreementReport analyze_agreement(const SpectralData& s, std::vector<int> z,
                                  std::optional<double> zero_tolerance) {
  AgreementReport r;
  r.P = compute_P(s);
  r.PT = compute_PT(r.P, s);
  r.zero_tolerance = zero_tolerance.value_or(default_zero_tolerance(r.PT));
  r.required_zero = std::move(z);
  r.consecutive = consecutive_agreements(r.PT, s, r.required_zero, r.zero_tolerance);
  r.pairs = agreement_relation(s, r.required_zero, r.zero_tolerance);
  r.partition = extract_clusters(r.pairs);
  return r;
}

std::vector<int> required_zero_for_h(int h) {
  std::vector<int> z;
  for (int k = 2; k < h; ++k) z.push_back(k);
  return z;
}

std::vector<ScanEntry> scan_h(const SpectralData& s, std::optional<double> zero_tolerance) {
  const Eigen::MatrixXd pt = compute_PT(compute_P(s), s);
  const double tol = zero_tolerance.value_or(default_zero_tolerance(pt));
  const double degenerate = degeneracy_tolerance(s);

  std::vector<ScanEntry> entries;
  for (int h = 2; h <= s.n(); ++h) {
    if (h >= 3 && s.eigenvalues(h - 1) - s.eigenvalues(h - 2) <= degenerate) continue;
    auto partition = extract_clusters(agreement_relation(s, required_zero_for_h(h), tol));
    const auto it = std::find_if(entries.begin(), entries.end(),
                                 [&](const ScanEntry& e) { return e.partition == partition; });
    if (it != entries.end())
      it->h_values.push_back(h);
    else
      entries.push_back({{h}, std::move(partition)});
  }
  return entries;
}

}  // namespace qcluster
