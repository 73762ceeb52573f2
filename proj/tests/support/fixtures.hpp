#pragma once

// Published matrices from the two worked examples, plus graph generators
// and reference oracles used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qcluster/dynamics.hpp"
#include "qcluster/graph.hpp"

namespace fixtures {

inline Eigen::MatrixXd example1_weights() {
  Eigen::MatrixXd w(6, 6);
  w << 0, 1, 1, 0, 0.1, 0,
       1, 0, 1, 0, 0, 0.1,
       1, 1, 0, 0.1, 0, 0,
       0, 0, 0.1, 0, 1, 1,
       0.1, 0, 0, 1, 0, 0,
       0, 0.1, 0, 1, 0, 0;
  return w;
}

inline Eigen::MatrixXd example2_weights() {
  Eigen::MatrixXd w(6, 6);
  w << 0, 1, 1, 0, 0, 0,
       1, 0, 1, 0, 0, 0,
       1, 1, 0, 0.1, 0, 0,
       0, 0, 0.1, 0, 1, 1,
       0, 0, 0, 1, 0, 0,
       0, 0, 0, 1, 0, 0;
  return w;
}

// The printed (1,1) entry is 2; the weights give 2.1.
inline Eigen::MatrixXd example1_laplacian() {
  Eigen::MatrixXd l(6, 6);
  l << 2.1, -1, -1, 0, -0.1, 0,
       -1, 2.1, -1, 0, 0, -0.1,
       -1, -1, 2.1, -0.1, 0, 0,
       0, 0, -0.1, 2.1, -1, -1,
       -0.1, 0, 0, -1, 1.1, 0,
       0, -0.1, 0, -1, 0, 1.1;
  return l;
}

inline Eigen::MatrixXd example2_laplacian() {
  Eigen::MatrixXd l(6, 6);
  l << 2, -1, -1, 0, 0, 0,
       -1, 2, -1, 0, 0, 0,
       -1, -1, 2.1, -0.1, 0, 0,
       0, 0, -0.1, 2.1, -1, -1,
       0, 0, 0, -1, 1, 0,
       0, 0, 0, -1, 0, 1;
  return l;
}

inline qcluster::AgentDynamics example1_dynamics() {
  Eigen::Matrix2d a, f;
  a << 0.25, 1, -1, 0.25;
  f << 0, -1, 0.5, 1;
  return {a, f};
}

inline qcluster::AgentDynamics example2_dynamics() {
  Eigen::Matrix2d a, f;
  a << 0.25, 2, -2, 0.25;
  f << 0.5, -1, 4, 0.5;
  return {a, f};
}

inline Eigen::MatrixXd example1_P() {
  Eigen::MatrixXd p(6, 6);
  p << 0.3235, -0.3235, 0, 0, 0.0294, -0.0294,
       -0.0003, 0.3232, -0.3229, -0.0104, -0.0095, 0.0199,
       1.5625, 1.5625, 1.8750, -1.8750, -1.5625, -1.5625,
       -0.0199, 0.0095, 0.0104, 0.3229, -0.6173, 0.2944,
       0.0294, -0.0294, 0, 0, 0.9118, -0.9118,
       -1.8952, -1.5423, -1.5625, 1.5625, 1.2482, 2.1893;
  return p;
}

inline Eigen::MatrixXd example1_PT() {
  Eigen::MatrixXd pt(6, 6);
  pt << 0, 0, 0.0643, 0, -0.4549, 0,
        0, 0, -0.0322, -0.2887, 0.2274, 0.2706,
        0, -4.0825, 0, 0, 0, -0.3608,
        0, 0, -0.6450, 0.2887, -0.0113, 0.2706,
        0, 0, 1.2899, 0, 0.0227, 0,
        0, 4.0825, -0.6771, 0, 0.2161, -0.1804;
  return pt;
}

// Row 4 as printed has every sign flipped except the fifth entry, which
// violates P 1 = 0; it is excluded from comparisons.
inline Eigen::MatrixXd example2_P() {
  Eigen::MatrixXd p(6, 6);
  p << 0.3333, -0.3333, 0, 0, 0, 0,
       0.1667, 0.5, -0.1667, -0.1667, -0.1667, -0.1667,
       5, 5, 5, -5, -5, -5,
       -0.1667, -0.1667, -0.1667, -0.1667, -0.8333, -0.1667,
       0, 0, 0, 0, 1, -1,
       -5.6667, -5.3333, -5, 5, 5, 6;
  return p;
}

inline Eigen::MatrixXd example2_PT() {
  Eigen::MatrixXd pt(6, 6);
  pt << 0, 0, 0, 0, 0.4714, 0,
        0, 0.4169, 0, 0.2887, -0.2357, 0.276,
        0, 12.2417, 0, 0, 0, 0.376,
        0, 0.4169, 0.7071, -0.2887, 0, -0.276,
        0, 0, -1.4142, 0, 0, 0,
        0, -13.0755, 0.7071, 0, -0.2357, 0.176;
  return pt;
}

inline qcluster::WeightedGraph from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v, x] : edges) w(u - 1, v - 1) = w(v - 1, u - 1) = x;
  return qcluster::WeightedGraph(w);
}

inline qcluster::WeightedGraph two_triangles() {
  return from_edges(6, {{1, 2, 1}, {1, 3, 1}, {2, 3, 1}, {4, 5, 1}, {4, 6, 1}, {5, 6, 1}});
}

inline qcluster::WeightedGraph k3() { return from_edges(3, {{1, 2, 1}, {1, 3, 1}, {2, 3, 1}}); }

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random spanning tree plus extra edges with probability `density`.
inline Eigen::MatrixXd random_connected_weights(Rng& rng, int n, double density, double wlo = 0.2,
                                                double whi = 2.0) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int k = 1; k < n; ++k) {
    const int u = order[k], v = order[uniform_int(rng, 0, k - 1)];
    w(u, v) = w(v, u) = uniform(rng, wlo, whi);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w(i, j) == 0.0 && uniform(rng, 0, 1) < density) w(i, j) = w(j, i) = uniform(rng, wlo, whi);
  return w;
}

// Connected graph built from a random quotient graph on `groups` classes.
// Members of one class share every outside weight and are either pairwise
// joined with one common weight or pairwise unjoined, so they are twins:
// e_u - e_v is a Laplacian eigenvector and every other eigenvector takes
// equal values on u and v. This makes exact agreements common.
inline Eigen::MatrixXd random_twin_weights(Rng& rng, int n) {
  std::vector<int> cls(n);
  int groups = 0;
  for (int i = 0; i < n;) {
    const int size = std::min(n - i, uniform_int(rng, 1, 3));
    for (int k = 0; k < size; ++k) cls[i + k] = groups;
    i += size;
    ++groups;
  }
  std::shuffle(cls.begin(), cls.end(), rng);
  Eigen::MatrixXd q = groups > 1 ? random_connected_weights(rng, groups, 0.3) : Eigen::MatrixXd::Zero(1, 1);
  std::vector<double> inner(groups);
  for (auto& c : inner) c = uniform(rng, 0, 1) < 0.5 ? uniform(rng, 0.2, 2.0) : 0.0;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) w(i, j) = cls[i] == cls[j] ? inner[cls[i]] : q(cls[i], cls[j]);
  // A class without inner edges could be isolated if its quotient vertex is
  // a singleton with no quotient edges; the quotient is connected, so only
  // the one-class case needs care.
  if (groups == 1 && inner[0] == 0.0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) w(i, j) = 1.0;
  }
  return w;
}

// Several random connected blocks with no edges between them.
inline Eigen::MatrixXd random_multi_component_weights(Rng& rng, int n, int components) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  int start = 0;
  for (int c = 0; c < components; ++c) {
    const int size = c + 1 == components ? n - start : std::max(1, n / components);
    if (size >= 2) {
      const Eigen::MatrixXd block = random_connected_weights(rng, size, 0.4);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) w(perm[start + i], perm[start + j]) = block(i, j);
    }
    start += size;
  }
  return w;
}

inline Eigen::MatrixXd permute(const Eigen::MatrixXd& w, const std::vector<int>& perm) {
  // Vertex i of the result is vertex perm[i] of the input (0-based).
  const auto n = static_cast<int>(perm.size());
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = w(perm[i], perm[j]);
  return out;
}

// Eigenvalue oracle: largest real part of the spectrum via Eigen's general
// (Hessenberg QR) solver. Independent of the Routh-Hurwitz route.
inline double spectral_abscissa(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  return es.eigenvalues().real().maxCoeff();
}

// Exact solution of x' = M x via the eigen-decomposition of M (diagonalizable
// M assumed), independent of the Taylor expm in the library.
inline Eigen::VectorXd exact_flow(const Eigen::MatrixXd& m, const Eigen::VectorXd& x0, double t) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::MatrixXcd v = es.eigenvectors();
  const Eigen::VectorXcd lam = es.eigenvalues();
  const Eigen::VectorXcd c = v.partialPivLu().solve(x0.cast<std::complex<double>>());
  Eigen::VectorXcd y = v * (lam.array() * t).exp().matrix().cwiseProduct(c);
  return y.real();
}

// Right-hand side assembled agent by agent from x_i' = A x_i + F sum_j w_ij (x_j - x_i).
inline Eigen::VectorXd agentwise_rhs(const Eigen::MatrixXd& w, const qcluster::AgentDynamics& dyn,
                                     const Eigen::VectorXd& x) {
  const int n = static_cast<int>(w.rows()), d = dyn.d();
  Eigen::VectorXd out(n * d);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd coupling = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < n; ++j) coupling += w(i, j) * (x.segment(j * d, d) - x.segment(i * d, d));
    out.segment(i * d, d) = dyn.A() * x.segment(i * d, d) + dyn.F() * coupling;
  }
  return out;
}

}  // namespace fixtures
