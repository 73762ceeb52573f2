#include "qcluster/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "qcluster/error.hpp"

namespace qcluster {

namespace {

constexpr double kMarginal = 1e-9;

}  // namespace

AgentDynamics::AgentDynamics(Eigen::MatrixXd a, Eigen::MatrixXd f)
    : a_(std::move(a)), f_(std::move(f)) {
  if (a_.rows() < 1 || a_.rows() != a_.cols()) throw InputError("A must be a nonempty square matrix");
  if (f_.rows() != a_.rows() || f_.cols() != a_.cols()) {
    throw InputError("F must have the same shape as A");
  }
  if (!a_.allFinite() || !f_.allFinite()) throw InputError("A and F must be finite");
}

std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = 1.0;
  // M_k = m * M_{k-1} + c_{k-1} I,  c_k = -tr(m M_k) / k
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk;
    mk.diagonal().array() += c[static_cast<std::size_t>(k - 1)];
    c[static_cast<std::size_t>(k)] = -(m * mk).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<double> routh_first_column(const std::vector<double>& coefficients, double marginal) {
  const std::size_t degree = coefficients.size() - 1;
  const std::size_t width = degree / 2 + 1;
  std::vector<double> upper(width, 0.0), lower(width, 0.0);
  for (std::size_t i = 0; i <= degree; ++i) (i % 2 == 0 ? upper : lower)[i / 2] = coefficients[i];

  std::vector<double> column{upper[0]};
  for (std::size_t row = 1; row <= degree; ++row) {
    column.push_back(lower[0]);
    if (std::abs(lower[0]) < marginal) break;
    std::vector<double> next(width, 0.0);
    for (std::size_t j = 0; j + 1 < width; ++j)
      next[j] = (lower[0] * upper[j + 1] - upper[0] * lower[j + 1]) / lower[0];
    upper = std::move(lower);
    lower = std::move(next);
  }
  return column;
}

bool is_hurwitz(const Eigen::MatrixXd& m) {
  const auto poly = characteristic_polynomial(m);
  const auto column = routh_first_column(poly, kMarginal);
  if (column.size() != poly.size()) return false;
  for (const double entry : column)
    if (!(entry >= kMarginal)) return false;
  return true;
}

StabilityPartition stability_partition(const AgentDynamics& dyn, const SpectralData& s) {
  StabilityPartition out;
  const int n = s.n();
  const bool a_hurwitz = is_hurwitz(dyn.A());
  for (int k = 0; k < n; ++k) {
    const double lambda = s.eigenvalues(k);
    out.hurwitz.push_back(lambda < s.zero_tol ? a_hurwitz : is_hurwitz(dyn.mode_matrix(lambda)));
  }
  for (int k = 2; k <= n; ++k)
    if (!out.is_hurwitz_mode(k)) out.required_zero.push_back(k);

  int first = 0;
  for (int k = 1; k <= n; ++k) {
    if (out.is_hurwitz_mode(k)) {
      first = k;
      break;
    }
  }
  if (first == 0) {
    out.warnings.emplace_back("no Hurwitz modes: no pair of agents can agree");
    return out;
  }
  if (first == 1) {
    out.warnings.emplace_back("A is Hurwitz: every agent decays to the origin");
    return out;
  }
  for (int k = first; k <= n; ++k) {
    if (!out.is_hurwitz_mode(k)) {
      out.warnings.emplace_back("non-monotone stability split: mode " + std::to_string(k) +
                                " is unstable above the first Hurwitz mode " +
                                std::to_string(first));
      return out;
    }
  }
  out.h = first;
  return out;
}

std::vector<ValidationItem> validate_design(const AgentDynamics& dyn, const SpectralData& s) {
  std::vector<ValidationItem> items;
  items.push_back({1, CheckStatus::pass, "homogeneous agents: one (A, F) pair shared by all"});

  if (is_hurwitz(dyn.A())) {
    items.push_back({2, CheckStatus::warn,
                     "A is Hurwitz: consentaneous groups all decay to the origin and cannot be told "
                     "apart; A should be unstable"});
  } else {
    items.push_back({2, CheckStatus::pass, "A is not Hurwitz"});
  }

  const auto part = stability_partition(dyn, s);
  const int zeros = zero_eigenvalue_count(s);
  bool any_hurwitz_nonzero = false;
  for (int k = zeros + 1; k <= s.n(); ++k) any_hurwitz_nonzero |= part.is_hurwitz_mode(k);
  if (part.required_zero.empty()) {
    items.push_back({3, CheckStatus::warn,
                     "every nonzero mode is Hurwitz (h = 2): the whole graph forms one cluster"});
  } else if (!any_hurwitz_nonzero) {
    items.push_back({3, CheckStatus::warn,
                     "no nonzero mode is Hurwitz: no pair of agents can agree"});
  } else {
    items.push_back({3, CheckStatus::pass, "mixed stable and unstable Laplacian modes"});
  }

  if (part.h) {
    items.push_back({4, CheckStatus::pass, "monotone split with h = " + std::to_string(*part.h)});
  } else {
    items.push_back({4, CheckStatus::warn, "stability split is not monotone; h is undefined"});
  }
  return items;
}

ConsensusVerdict check_consensus_condition(const AgentDynamics& dyn, const SpectralData& s,
                                           bool connected) {
  ConsensusVerdict v;
  v.a_is_hurwitz = is_hurwitz(dyn.A());
  if (!connected) return v;
  for (int k = 1; k < s.n(); ++k)
    if (!is_hurwitz(dyn.mode_matrix(s.eigenvalues(k)))) return v;
  v.consensus = true;
  return v;
}

AgentDynamics design_second_order(const SpectralData& s, int target_h, double omega) {
  const int n = s.n();
  if (target_h < 3 || target_h > n) {
    throw DesignError("target h must lie in [3, " + std::to_string(n) + "], got " +
                      std::to_string(target_h));
  }
  if (!(omega > 0.0)) throw DesignError("omega must be positive");
  if (zero_eigenvalue_count(s) != 1) throw DesignError("graph must be connected");

  const double below = s.eigenvalues(target_h - 2);
  const double above = s.eigenvalues(target_h - 1);
  if (above - below <= degeneracy_tolerance(s)) {
    std::ostringstream msg;
    msg << "degenerate gap: lambda_" << target_h - 1 << " = " << below << " and lambda_"
        << target_h << " = " << above << " coincide";
    throw DesignError(msg.str());
  }

  const double growth2 = std::sqrt(below * above);
  const double w = std::max(omega, growth2);
  Eigen::Matrix2d a;
  a << growth2 / 2.0, w, -w, growth2 / 2.0;
  Eigen::Matrix2d f;
  f << 0.0, -1.0, 0.5, 1.0;
  AgentDynamics dyn(a, f);

  const auto part = stability_partition(dyn, s);
  if (!part.h || *part.h != target_h) {
    std::ostringstream msg;
    msg << "designed gains realize h = " << (part.h ? std::to_string(*part.h) : "none")
        << " instead of " << target_h << "; Hurwitz flags:";
    for (const bool flag : part.hurwitz) msg << (flag ? " T" : " F");
    throw DesignError(msg.str());
  }
  return dyn;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd scaled = m / std::ldexp(1.0, squarings);

  const Eigen::Index n = m.rows();
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace qcluster
