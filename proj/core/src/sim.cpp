#include "qcluster/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "qcluster/error.hpp"

namespace qcluster {

namespace {

constexpr double kQuasiGapThreshold = 2.0;
constexpr double kDegenerateDistance = 1e-12;

void check_agent(const Trajectory& tr, int i) {
  if (i < 1 || i > tr.agents) throw InputError("agent index " + std::to_string(i) + " out of range");
}

double max_agent_norm(const Trajectory& tr, std::size_t k) {
  double best = 0.0;
  for (int a = 1; a <= tr.agents; ++a) best = std::max(best, tr.agent(k, a).norm());
  return best;
}

}  // namespace

Eigen::MatrixXd build_system_matrix(const Eigen::MatrixXd& laplacian, const AgentDynamics& dyn) {
  const Eigen::Index n = laplacian.rows();
  const Eigen::Index d = dyn.d();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * d, n * d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      auto block = m.block(i * d, j * d, d, d);
      if (laplacian(i, j) != 0.0) block = -laplacian(i, j) * dyn.F();
      if (i == j) block += dyn.A();
    }
  }
  return m;
}

Eigen::VectorXd initial_state(int agents, int dim, const SimConfig& cfg) {
  if (cfg.init) {
    const auto& init = *cfg.init;
    if (init.rows() != agents || init.cols() != dim) {
      throw InputError("initial state must be " + std::to_string(agents) + "x" +
                       std::to_string(dim));
    }
    Eigen::VectorXd x(agents * dim);
    for (int i = 0; i < agents; ++i) x.segment(i * dim, dim) = init.row(i).transpose();
    return x;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXd x(agents * dim);
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = uniform(rng);
  return x;
}

Trajectory integrate(const Eigen::MatrixXd& m, const Eigen::VectorXd& x0, int agents,
                     const SimConfig& cfg) {
  if (!(cfg.t_end > 0.0) || !(cfg.dt > 0.0)) throw InputError("t_end and dt must be positive");
  if (cfg.dt > cfg.t_end) throw InputError("dt must not exceed t_end");
  if (cfg.record_stride < 1) throw InputError("record_stride must be >= 1");
  if (m.rows() != m.cols() || m.rows() != x0.size()) {
    throw InputError("system matrix and initial state dimensions disagree");
  }
  if (agents < 1 || x0.size() % agents != 0) throw InputError("state size is not a multiple of N");

  const auto steps = std::max<long long>(1, static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  const double h = cfg.t_end / static_cast<double>(steps);

  Trajectory tr;
  tr.agents = agents;
  tr.dim = static_cast<int>(x0.size() / agents);
  tr.times.push_back(0.0);
  tr.states.push_back(x0);

  Eigen::VectorXd x = x0;
  Eigen::VectorXd k1, k2, k3, k4;
  double last_valid = 0.0;
  for (long long step = 1; step <= steps; ++step) {
    k1.noalias() = m * x;
    k2.noalias() = m * (x + 0.5 * h * k1);
    k3.noalias() = m * (x + 0.5 * h * k2);
    k4.noalias() = m * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t = step == steps ? cfg.t_end : static_cast<double>(step) * h;
    if (!x.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite state after t = " << last_valid;
      throw NumericError(msg.str());
    }
    last_valid = t;
    const bool blown_up = x.cwiseAbs().maxCoeff() > cfg.blowup_cap;
    if (step % cfg.record_stride == 0 || step == steps || blown_up) {
      tr.times.push_back(t);
      tr.states.push_back(x);
    }
    if (blown_up) {
      tr.truncated = true;
      break;
    }
  }
  return tr;
}

Eigen::VectorXd consensus_mode(const Eigen::VectorXd& x0, const AgentDynamics& dyn, double t) {
  const int d = dyn.d();
  if (x0.size() % d != 0) throw InputError("state size is not a multiple of d");
  const auto agents = x0.size() / d;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (Eigen::Index i = 0; i < agents; ++i) mean += x0.segment(i * d, d);
  mean /= static_cast<double>(agents);
  return expm(dyn.A() * t) * mean;
}

Series normalized_distance_series(const Trajectory& tr, int i, int j) {
  check_agent(tr, i);
  check_agent(tr, j);
  Series out;
  out.reserve(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double dist = (tr.agent(k, i) - tr.agent(k, j)).norm();
    out.emplace_back(tr.times[k], dist / (1.0 + max_agent_norm(tr, k)));
  }
  return out;
}

Series difference_series(const Trajectory& tr, int i, int j, int coord) {
  check_agent(tr, i);
  check_agent(tr, j);
  if (coord < 1 || coord > tr.dim) throw InputError("coordinate " + std::to_string(coord) + " out of range");
  Series out;
  out.reserve(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const auto base = static_cast<Eigen::Index>(coord - 1);
    out.emplace_back(tr.times[k], tr.states[k]((i - 1) * tr.dim + base) -
                                      tr.states[k]((j - 1) * tr.dim + base));
  }
  return out;
}

QuasiClusterReport quasi_clusters(const Trajectory& tr, double window) {
  if (tr.size() < 10) throw InputError("quasi_clusters needs at least 10 recorded points");
  if (!(window > 0.0 && window <= 1.0)) throw InputError("window must be in (0, 1]");
  const int n = tr.agents;

  QuasiClusterReport report;
  report.evaluation_time = tr.times.back();
  report.window_start = tr.times.back() - window * (tr.times.back() - tr.times.front());
  std::size_t first = 0;
  while (first + 1 < tr.size() && tr.times[first] < report.window_start) ++first;

  std::vector<double> scale;
  for (std::size_t k = first; k < tr.size(); ++k) scale.push_back(1.0 + max_agent_norm(tr, k));

  // (dissimilarity, i, j) with 0-based agents.
  std::vector<std::tuple<double, int, int>> edges;
  double largest = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double log_sum = 0.0;
      double raw_max = 0.0;
      for (std::size_t k = first; k < tr.size(); ++k) {
        const double dist = (tr.agent(k, i + 1) - tr.agent(k, j + 1)).norm() / scale[k - first];
        raw_max = std::max(raw_max, dist);
        log_sum += std::log(std::max(dist, kDegenerateDistance));
      }
      largest = std::max(largest, raw_max);
      const double mean = std::exp(log_sum / static_cast<double>(tr.size() - first));
      edges.emplace_back(mean, i, j);
    }
  }

  auto single = [&] {
    Partition p;
    p.clusters.emplace_back(n);
    std::iota(p.clusters.back().begin(), p.clusters.back().end(), 1);
    return p;
  };
  if (largest < kDegenerateDistance || n < 3) {
    report.partition = single();
    report.gap_ratio = 1.0;
    return report;
  }

  std::sort(edges.begin(), edges.end());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<int, int>> merges;
  std::vector<double> heights;
  for (const auto& [w, i, j] : edges) {
    const int a = find(i), b = find(j);
    if (a == b) continue;
    parent[std::max(a, b)] = std::min(a, b);
    merges.emplace_back(i, j);
    heights.push_back(w);
  }

  std::size_t cut = 0;  // keep merges [0, cut]
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < heights.size(); ++k) {
    const double ratio = heights[k + 1] / heights[k];
    if (ratio > best) {
      best = ratio;
      cut = k;
    }
  }
  report.gap_ratio = std::max(1.0, best);
  if (best < kQuasiGapThreshold) {
    report.partition = single();
    return report;
  }

  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) rel[i][i] = true;
  for (std::size_t k = 0; k <= cut; ++k) {
    const auto [i, j] = merges[k];
    rel[i][j] = rel[j][i] = true;
  }
  report.partition = extract_clusters(rel);
  return report;
}

std::vector<Eigen::VectorXd> modal_coordinates(const Trajectory& tr, const Eigen::MatrixXd& basis) {
  if (basis.rows() != tr.agents) throw InputError("basis size does not match agent count");
  std::vector<Eigen::VectorXd> out;
  out.reserve(tr.size());
  for (const auto& x : tr.states) {
    const Eigen::Map<const Eigen::MatrixXd> stacked(x.data(), tr.dim, tr.agents);
    Eigen::MatrixXd modal = stacked * basis;  // column k = sum_i T(i,k) x_i
    out.emplace_back(Eigen::Map<Eigen::VectorXd>(modal.data(), modal.size()));
  }
  return out;
}

}  // namespace qcluster
