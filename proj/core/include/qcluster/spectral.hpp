#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qcluster/graph.hpp"

namespace qcluster {

/// Orthonormal eigendecomposition of a Laplacian, L = T diag(eigenvalues) T^T.
///
/// Gauge: the first column of `basis` is exactly (1/sqrt(N)) 1, and every
/// other column has its largest-magnitude entry positive (earliest index on
/// ties). Inside a repeated eigenvalue the basis is still arbitrary, so
/// consumers should only rely on quantities invariant under rotations of
/// such a block (see eigenvalue_blocks()).
struct SpectralData {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXd basis;          // T, column k pairs with eigenvalues[k]
  Eigen::MatrixXd pseudoinverse;  // Moore-Penrose inverse of L
  double zero_tol = 0.0;          // eigenvalues below this count as zero
  int sweeps = 0;                 // Jacobi sweeps used

  int n() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

/// Symmetric eigensolver used by eigendecompose(): cyclic Jacobi rotations
/// until the off-diagonal Frobenius norm drops below 1e-12 relative to the
/// matrix norm. Eigenvalues are returned unsorted, matching `vectors` columns.
struct JacobiResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  int sweeps = 0;
};
JacobiResult jacobi_eigensolver(const Eigen::MatrixXd& symmetric, int max_sweeps = 100);

/// Throws NumericError if Jacobi fails to converge within 100 sweeps.
SpectralData eigendecompose(const Laplacian& l);

/// L+ = T diag(0 or 1/lambda) T^T. With `require_connected`, more than one
/// zero eigenvalue raises PreconditionError (a connected graph has exactly one).
Eigen::MatrixXd pseudoinverse(const SpectralData& s, bool require_connected = false);

int zero_eigenvalue_count(const SpectralData& s);

/// Groups of (0-based) column indices whose eigenvalues coincide within
/// degeneracy_tolerance(s). Singletons for simple eigenvalues.
std::vector<std::vector<int>> eigenvalue_blocks(const SpectralData& s);

double degeneracy_tolerance(const SpectralData& s);

}  // namespace qcluster
