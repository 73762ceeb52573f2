#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcluster/spectral.hpp"

namespace qcluster {

/// Homogeneous agent model x_i' = A x_i + F sum_j w_ij (x_j - x_i).
class AgentDynamics {
 public:
  /// Throws InputError unless A and F are finite, square and the same size.
  AgentDynamics(Eigen::MatrixXd a, Eigen::MatrixXd f);

  int d() const noexcept { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXd& A() const noexcept { return a_; }
  const Eigen::MatrixXd& F() const noexcept { return f_; }

  /// A - lambda F, the closed-loop block for Laplacian mode lambda.
  Eigen::MatrixXd mode_matrix(double lambda) const { return a_ - lambda * f_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd f_;
};

/// Which closed-loop mode blocks A - lambda_k F are Hurwitz.
///
/// Modes are 1-indexed in ascending eigenvalue order: mode 1 is lambda_1 = 0,
/// i.e. A itself.
struct StabilityPartition {
  std::vector<bool> hurwitz;            // hurwitz[k-1] for mode k
  std::optional<int> h;                 // first Hurwitz mode of a monotone split
  std::vector<int> required_zero;       // Z = {k >= 2 : mode k not Hurwitz}
  std::vector<std::string> warnings;

  bool is_hurwitz_mode(int k) const { return hurwitz.at(static_cast<std::size_t>(k - 1)); }
};

/// Monic coefficients of det(sI - M), highest degree first (Faddeev-LeVerrier).
std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& m);

/// First column of the Routh array for a polynomial given highest degree first.
/// Stops early (returning a shorter column) if a pivot is within `marginal` of 0.
std::vector<double> routh_first_column(const std::vector<double>& coefficients,
                                       double marginal = 1e-9);

/// Routh-Hurwitz test; marginal cases count as not Hurwitz.
bool is_hurwitz(const Eigen::MatrixXd& m);

StabilityPartition stability_partition(const AgentDynamics& dyn, const SpectralData& s);

enum class CheckStatus { pass, warn };

struct ValidationItem {
  int principle;  // 1 homogeneity, 2 unstable A, 3 mixed modes, 4 monotone split
  CheckStatus status;
  std::string message;
};

std::vector<ValidationItem> validate_design(const AgentDynamics& dyn, const SpectralData& s);

struct ConsensusVerdict {
  bool consensus = false;
  // The criterion assumes A is not Hurwitz. When it is, every agent decays
  // to the origin and the verdict is trivially about that.
  bool a_is_hurwitz = false;
};

/// Connected graph and A - lambda_k F Hurwitz for every k >= 2.
ConsensusVerdict check_consensus_condition(const AgentDynamics& dyn, const SpectralData& s,
                                           bool connected);

/// Second-order (d = 2) rotation-plus-growth design whose first Hurwitz mode
/// is `target_h`. Growth rate sits at the geometric mean of the eigenvalue
/// gap (lambda_{h-1}, lambda_h); rotation rate is max(omega, that mean).
/// Throws DesignError on an empty gap or a mismatched realized split.
AgentDynamics design_second_order(const SpectralData& s, int target_h, double omega = 1.0);

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

}  // namespace qcluster
