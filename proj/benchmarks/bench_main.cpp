#include <random>

#include <benchmark/benchmark.h>

#include "qcluster/agreement.hpp"
#include "qcluster/dynamics.hpp"
#include "qcluster/graph.hpp"
#include "qcluster/sim.hpp"
#include "qcluster/spectral.hpp"

namespace {

qcluster::WeightedGraph ring_with_chords(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> weight(0.2, 2.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    w(i, j) = w(j, i) = weight(rng);
  }
  for (int k = 0; k < n; ++k) {
    const int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
    if (i != j) w(i, j) = w(j, i) = weight(rng);
  }
  return qcluster::WeightedGraph(w);
}

void BM_Eigendecompose(benchmark::State& state) {
  const auto l = qcluster::laplacian(ring_with_chords(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(qcluster::eigendecompose(l));
}
BENCHMARK(BM_Eigendecompose)->Arg(8)->Arg(32)->Arg(64)->Arg(128);

void BM_AgreementRelation(benchmark::State& state) {
  const auto s = qcluster::eigendecompose(qcluster::laplacian(ring_with_chords(static_cast<int>(state.range(0)))));
  const auto z = qcluster::required_zero_for_h(3);
  for (auto _ : state) benchmark::DoNotOptimize(qcluster::agreement_relation(s, z, 1e-6));
}
BENCHMARK(BM_AgreementRelation)->Arg(8)->Arg(32)->Arg(64);

void BM_Integrate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto l = qcluster::laplacian(ring_with_chords(n));
  const auto s = qcluster::eigendecompose(l);
  const auto dyn = qcluster::design_second_order(s, 3);
  const Eigen::MatrixXd m = qcluster::build_system_matrix(l, dyn);
  qcluster::SimConfig cfg;
  cfg.t_end = 1.0;
  const Eigen::VectorXd x0 = qcluster::initial_state(n, 2, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(qcluster::integrate(m, x0, n, cfg));
}
BENCHMARK(BM_Integrate)->Arg(6)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
