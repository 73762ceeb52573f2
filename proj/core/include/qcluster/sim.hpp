#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcluster/agreement.hpp"
#include "qcluster/dynamics.hpp"
#include "qcluster/graph.hpp"

namespace qcluster {

struct SimConfig {
  double t_end = 5.0;
  double dt = 1e-3;
  int record_stride = 10;
  std::uint64_t seed = 1;
  // Explicit N x d initial states; when empty, uniform(-1, 1) per coordinate
  // drawn from std::mt19937_64 seeded with `seed`.
  std::optional<Eigen::MatrixXd> init;
  double blowup_cap = 1e12;
};

/// Recorded states of all agents. `states[k]` is the stacked vector
/// (x_1, ..., x_N) at `times[k]`, agent-major.
struct Trajectory {
  int agents = 0;
  int dim = 0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  bool truncated = false;

  std::size_t size() const noexcept { return times.size(); }

  /// State of 1-indexed agent i at record k.
  Eigen::VectorXd agent(std::size_t k, int i) const { return states[k].segment((i - 1) * dim, dim); }
};

struct QuasiClusterReport {
  Partition partition;
  double gap_ratio = 1.0;
  double evaluation_time = 0.0;  // last recorded time
  double window_start = 0.0;
};

/// I_N (x) A - L (x) F.
Eigen::MatrixXd build_system_matrix(const Eigen::MatrixXd& laplacian, const AgentDynamics& dyn);
inline Eigen::MatrixXd build_system_matrix(const Laplacian& l, const AgentDynamics& dyn) {
  return build_system_matrix(l.matrix(), dyn);
}

/// Stacked initial state for N agents of dimension d (explicit or seeded).
Eigen::VectorXd initial_state(int agents, int dim, const SimConfig& cfg);

/// Fixed-step classical RK4 on x' = M x. The step is shrunk to t_end / ceil(t_end / dt)
/// so the last record falls exactly on t_end. Records t = 0, every
/// `record_stride` steps and t_end. Stops early (truncated) once any
/// |x| exceeds blowup_cap; throws NumericError on non-finite state.
Trajectory integrate(const Eigen::MatrixXd& m, const Eigen::VectorXd& x0, int agents,
                     const SimConfig& cfg);

/// e^{At} times the mean initial agent state.
Eigen::VectorXd consensus_mode(const Eigen::VectorXd& x0, const AgentDynamics& dyn, double t);

using Series = std::vector<std::pair<double, double>>;

/// ||x_i - x_j|| / (1 + max_k ||x_k||) at each record.
Series normalized_distance_series(const Trajectory& tr, int i, int j);

/// x_i[coord] - x_j[coord], 1-indexed coord.
Series difference_series(const Trajectory& tr, int i, int j, int coord);

/// Single-linkage clustering of the log-averaged normalized pairwise
/// distances over the final `window` fraction of the trajectory, cut at the
/// largest ratio between successive merge heights. A ratio under 2 yields
/// one cluster.
QuasiClusterReport quasi_clusters(const Trajectory& tr, double window = 0.2);

/// Modal coordinates (T^T (x) I_d) x for each record; entry k of the result
/// holds mode k+1's d-vector block stacked like the states.
std::vector<Eigen::VectorXd> modal_coordinates(const Trajectory& tr, const Eigen::MatrixXd& basis);

}  // namespace qcluster
