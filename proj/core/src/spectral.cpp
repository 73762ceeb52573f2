#include "qcluster/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcluster/error.hpp"

namespace qcluster {

namespace {

constexpr double kJacobiTol = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Rotates rows/columns p and q of `a` to annihilate a(p, q); accumulates into v.
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

// Largest-magnitude entry positive; an entry only displaces the current
// maximum if it is larger by a relative margin, so near-ties keep the earliest.
void normalize_sign(Eigen::Ref<Eigen::VectorXd> col) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < col.size(); ++i) {
    if (std::abs(col(i)) > std::abs(col(best)) * (1.0 + 1e-9)) best = i;
  }
  if (col(best) < 0.0) col = -col;
}

// Replaces the null-space block [0, count) of `basis` with an orthonormal basis
// whose first vector is exactly 1/sqrt(N).
void fix_zero_block(Eigen::MatrixXd& basis, int count) {
  const Eigen::Index n = basis.rows();
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  if (count == 1) {
    basis.col(0) = ones;
    return;
  }
  // Modified Gram-Schmidt against the ones vector, greedily taking the
  // remaining block column with the largest residual.
  std::vector<Eigen::VectorXd> pool;
  for (int k = 0; k < count; ++k) pool.emplace_back(basis.col(k));
  std::vector<Eigen::VectorXd> chosen{ones};
  while (static_cast<int>(chosen.size()) < count) {
    for (auto& p : pool)
      p -= chosen.back().dot(p) * chosen.back();
    const auto it = std::max_element(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
      return a.squaredNorm() < b.squaredNorm();
    });
    if (it->norm() < 1e-8) throw NumericError("zero eigenspace lost rank while fixing gauge");
    chosen.push_back(it->normalized());
    pool.erase(it);
  }
  for (int k = 0; k < count; ++k) basis.col(k) = chosen[k];
  for (int k = 1; k < count; ++k) normalize_sign(basis.col(k));
}

}  // namespace

JacobiResult jacobi_eigensolver(const Eigen::MatrixXd& symmetric, int max_sweeps) {
  Eigen::MatrixXd a = symmetric;
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();
  const double threshold = kJacobiTol * (scale > 0.0 ? scale : 1.0);

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweep == max_sweeps) {
      std::ostringstream msg;
      msg << "Jacobi eigensolver did not converge in " << max_sweeps
          << " sweeps (off-diagonal norm " << off << ", threshold " << threshold << ")";
      throw NumericError(msg.str());
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweep;
    off = off_diagonal_norm(a);
  }
  return {a.diagonal(), std::move(v), sweep};
}

SpectralData eigendecompose(const Laplacian& l) {
  const auto raw = jacobi_eigensolver(l.matrix(), kMaxSweeps);
  const Eigen::Index n = raw.values.size();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return raw.values(a) < raw.values(b); });

  SpectralData s;
  s.sweeps = raw.sweeps;
  s.eigenvalues.resize(n);
  s.basis.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    s.eigenvalues(k) = raw.values(order[k]);
    s.basis.col(k) = raw.vectors.col(order[k]);
  }
  s.zero_tol = 1e-9 * std::max(1.0, s.eigenvalues(n - 1));

  const int zeros = zero_eigenvalue_count(s);
  if (zeros < 1) throw NumericError("Laplacian has no zero eigenvalue within tolerance");
  fix_zero_block(s.basis, zeros);
  for (Eigen::Index k = zeros; k < n; ++k) normalize_sign(s.basis.col(k));

  s.pseudoinverse = pseudoinverse(s);
  return s;
}

Eigen::MatrixXd pseudoinverse(const SpectralData& s, bool require_connected) {
  const int zeros = zero_eigenvalue_count(s);
  if (require_connected && zeros != 1) {
    throw PreconditionError(std::to_string(zeros) +
                            " zero Laplacian eigenvalues; a connected graph has exactly one");
  }
  Eigen::VectorXd inv(s.n());
  for (int k = 0; k < s.n(); ++k)
    inv(k) = s.eigenvalues(k) < s.zero_tol ? 0.0 : 1.0 / s.eigenvalues(k);
  return s.basis * inv.asDiagonal() * s.basis.transpose();
}

int zero_eigenvalue_count(const SpectralData& s) {
  return static_cast<int>((s.eigenvalues.array() < s.zero_tol).count());
}

double degeneracy_tolerance(const SpectralData& s) {
  return 1e-8 * std::max(1.0, s.eigenvalues.size() ? s.eigenvalues.maxCoeff() : 0.0);
}

std::vector<std::vector<int>> eigenvalue_blocks(const SpectralData& s) {
  std::vector<std::vector<int>> blocks;
  const double tol = degeneracy_tolerance(s);
  for (int k = 0; k < s.n(); ++k) {
    if (!blocks.empty() && s.eigenvalues(k) - s.eigenvalues(blocks.back().back()) <= tol)
      blocks.back().push_back(k);
    else
      blocks.push_back({k});
  }
  return blocks;
}

}  // namespace qcluster
