#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qcluster {

/// Undirected weighted graph stored as its dense symmetric weight matrix.
///
/// Vertices are 1-indexed in every public interface; `weights()` is a plain
/// 0-indexed Eigen matrix.
class WeightedGraph {
 public:
  /// Validates and stores `weights`. Throws InputError unless the matrix is
  /// square with n >= 2, finite, nonnegative, has a zero diagonal, and is
  /// symmetric to 1e-12 relative. Tiny asymmetries are averaged away.
  explicit WeightedGraph(Eigen::MatrixXd weights);

  int n() const noexcept { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }

  /// Weight between 1-indexed vertices u and v.
  double weight(int u, int v) const { return weights_(u - 1, v - 1); }

  /// Number of unordered vertex pairs with positive weight.
  int edge_count() const;

  /// Row sums of the weight matrix.
  Eigen::VectorXd degrees() const { return weights_.rowwise().sum(); }

 private:
  Eigen::MatrixXd weights_;
};

/// L = D - W. Holds the matrix only; construct through laplacian() or
/// from_matrix() so the invariants below are always checked.
class Laplacian {
 public:
  /// Accepts any symmetric matrix with zero row sums and nonpositive
  /// off-diagonal entries (1x1 zero allowed). Throws InputError otherwise.
  static Laplacian from_matrix(Eigen::MatrixXd matrix);

  int n() const noexcept { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

 private:
  explicit Laplacian(Eigen::MatrixXd m) : matrix_(std::move(m)) {}
  friend Laplacian laplacian(const WeightedGraph& g);

  Eigen::MatrixXd matrix_;
};

/// Parses the edge-list format: one "u v w" per line, 1-indexed ids,
/// '#' comments, and an optional "n <N>" header. Duplicate edges, self
/// loops and non-positive weights are errors.
WeightedGraph parse_edge_list(std::string_view text);

/// Parses a plain CSV square matrix (no header row).
WeightedGraph parse_adjacency(std::string_view csv);

/// Renders the weight matrix as CSV that parse_adjacency reads back exactly.
std::string render_adjacency(const WeightedGraph& g);

/// Parses either format: CSV when the first data line contains a comma,
/// otherwise an edge list.
WeightedGraph parse_graph(std::string_view text);

Laplacian laplacian(const WeightedGraph& g);

/// Maximal connected vertex sets (1-indexed), each sorted, ordered by
/// smallest member.
std::vector<std::vector<int>> connected_components(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);

}  // namespace qcluster
