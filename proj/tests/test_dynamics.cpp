#include <doctest.h>

#include <cmath>

#include "qcluster/dynamics.hpp"
#include "qcluster/error.hpp"
#include "qcluster/graph.hpp"
#include "qcluster/spectral.hpp"
#include "support/fixtures.hpp"

using namespace qcluster;

namespace {

SpectralData decompose(const Eigen::MatrixXd& w) { return eigendecompose(laplacian(WeightedGraph(w))); }

bool hurwitz_2x2(const Eigen::Matrix2d& m) { return m.trace() < 0.0 && m.determinant() > 0.0; }

int count_warnings(const std::vector<ValidationItem>& items) {
  int n = 0;
  for (const auto& i : items) n += i.status == CheckStatus::warn;
  return n;
}

}  // namespace

TEST_CASE("characteristic polynomial") {
  Eigen::Matrix2d m;
  m << 0.25, 1, -1, 0.25;
  const auto c = characteristic_polynomial(m);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(c[2] == doctest::Approx(1.0625).epsilon(1e-15));

  CHECK(characteristic_polynomial(Eigen::MatrixXd::Zero(2, 2)) == std::vector<double>{1, 0, 0});
  const auto cube = characteristic_polynomial(-Eigen::MatrixXd::Identity(3, 3));
  CHECK(cube == std::vector<double>{1, 3, 3, 1});
}

TEST_CASE("characteristic polynomial roots are the eigenvalues") {
  fixtures::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = fixtures::uniform_int(rng, 1, 6);
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = fixtures::uniform(rng, -2, 2);
    const auto c = characteristic_polynomial(m);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    for (int k = 0; k < d; ++k) {
      std::complex<double> value = 0.0;
      for (const double coef : c) value = value * es.eigenvalues()(k) + coef;
      CHECK(std::abs(value) < 1e-8 * std::pow(1.0 + std::abs(es.eigenvalues()(k)), d));
    }
  }
}

TEST_CASE("is_hurwitz on the first example's mode matrices") {
  const auto dyn = fixtures::example1_dynamics();
  CHECK_FALSE(is_hurwitz(dyn.mode_matrix(0.2)));
  CHECK(is_hurwitz(dyn.mode_matrix(1.095)));
  CHECK(is_hurwitz(-Eigen::MatrixXd::Identity(3, 3)));
  CHECK_FALSE(is_hurwitz(Eigen::MatrixXd::Identity(3, 3)));
}

TEST_CASE("marginal cases are not Hurwitz") {
  Eigen::Matrix2d rotation;
  rotation << 0, 1, -1, 0;  // roots +-i
  CHECK_FALSE(is_hurwitz(rotation));
  Eigen::Matrix2d singular;
  singular << -1, 0, 0, 0;
  CHECK_FALSE(is_hurwitz(singular));
  CHECK_FALSE(is_hurwitz(Eigen::MatrixXd::Zero(1, 1)));
  CHECK(is_hurwitz(-Eigen::MatrixXd::Identity(1, 1)));
}

TEST_CASE("Routh-Hurwitz agrees with eigenvalue oracle on random matrices") {
  fixtures::Rng rng(99);
  int tested = 0, stable = 0;
  while (tested < 1000) {
    const int d = fixtures::uniform_int(rng, 2, 4);
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = fixtures::uniform(rng, -2, 2);
    m.diagonal().array() -= fixtures::uniform(rng, 0, 2);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    if ((es.eigenvalues().real().cwiseAbs().array() < 1e-6).any()) continue;
    const bool expected = es.eigenvalues().real().maxCoeff() < 0.0;
    CHECK(is_hurwitz(m) == expected);
    if (d == 2) CHECK(hurwitz_2x2(m) == expected);
    stable += expected;
    ++tested;
  }
  CHECK(stable > 100);
  CHECK(stable < 900);
}

TEST_CASE("stability partition of the published examples") {
  for (int ex = 1; ex <= 2; ++ex) {
    const auto s = decompose(ex == 1 ? fixtures::example1_weights() : fixtures::example2_weights());
    const auto dyn = ex == 1 ? fixtures::example1_dynamics() : fixtures::example2_dynamics();
    const auto part = stability_partition(dyn, s);
    CHECK(part.hurwitz == std::vector<bool>{false, false, true, true, true, true});
    REQUIRE(part.h.has_value());
    CHECK(*part.h == 3);
    CHECK(part.required_zero == std::vector<int>{2});
    CHECK(part.warnings.empty());
    for (int k = 1; k <= 6; ++k) {
      CHECK(part.is_hurwitz_mode(k) == hurwitz_2x2(dyn.mode_matrix(s.eigenvalues(k - 1))));
    }
  }
}

TEST_CASE("stability partition without coupling") {
  const auto s = decompose(fixtures::example1_weights());
  const AgentDynamics dyn(fixtures::example1_dynamics().A(), Eigen::MatrixXd::Zero(2, 2));
  const auto part = stability_partition(dyn, s);
  CHECK(part.hurwitz == std::vector<bool>(6, false));
  CHECK_FALSE(part.h.has_value());
  CHECK(part.required_zero == std::vector<int>{2, 3, 4, 5, 6});
  REQUIRE(part.warnings.size() == 1);
  CHECK(part.warnings[0].find("no Hurwitz modes") != std::string::npos);
}

TEST_CASE("non-monotone split leaves h unset but fills Z") {
  const auto s = decompose(fixtures::example1_weights());
  // Hurwitz exactly for 0.5 < lambda < 2.
  Eigen::Matrix2d a, f;
  a << 0.5, 0, 0, -2;
  f << 1, 0, 0, -1;
  const auto part = stability_partition(AgentDynamics(a, f), s);
  CHECK(part.hurwitz == std::vector<bool>{false, false, true, false, false, false});
  CHECK_FALSE(part.h.has_value());
  CHECK_FALSE(part.warnings.empty());
  CHECK(part.required_zero == std::vector<int>{2, 4, 5, 6});
  const auto items = validate_design(AgentDynamics(a, f), s);
  CHECK(items[3].principle == 4);
  CHECK(items[3].status == CheckStatus::warn);
}

TEST_CASE("validate_design") {
  const auto s = decompose(fixtures::example1_weights());
  CHECK(count_warnings(validate_design(fixtures::example1_dynamics(), s)) == 0);

  const AgentDynamics stable(-Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2));
  const auto items = validate_design(stable, s);
  CHECK(items[1].principle == 2);
  CHECK(items[1].status == CheckStatus::warn);

  const AgentDynamics uncoupled(fixtures::example1_dynamics().A(), Eigen::MatrixXd::Zero(2, 2));
  const auto items3 = validate_design(uncoupled, s);
  CHECK(items3[2].principle == 3);
  CHECK(items3[2].status == CheckStatus::warn);
}

TEST_CASE("consensus condition") {
  const auto s = decompose(fixtures::example1_weights());
  const auto dyn = fixtures::example1_dynamics();
  CHECK_FALSE(check_consensus_condition(dyn, s, true).consensus);

  const AgentDynamics strong(dyn.A(), 10.0 * dyn.F());
  // Closed-form oracle: trace(A - lambda F') = 0.5 - 10 lambda < 0 and det > 0 for lambda >= 0.2.
  for (int k = 1; k < 6; ++k) CHECK(hurwitz_2x2(strong.mode_matrix(s.eigenvalues(k))));
  const auto verdict = check_consensus_condition(strong, s, true);
  CHECK(verdict.consensus);
  CHECK_FALSE(verdict.a_is_hurwitz);

  CHECK_FALSE(check_consensus_condition(strong, s, false).consensus);

  const AgentDynamics stable(-Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2));
  CHECK(check_consensus_condition(stable, s, true).a_is_hurwitz);
}

TEST_CASE("second-order designer on the published spectra") {
  const auto s1 = decompose(fixtures::example1_weights());
  const auto d1 = design_second_order(s1, 3);
  const double mid1 = std::sqrt(s1.eigenvalues(1) * s1.eigenvalues(2));
  CHECK(mid1 == doctest::Approx(0.468).epsilon(1e-3));
  CHECK(d1.A()(0, 0) == doctest::Approx(mid1 / 2));
  CHECK(d1.A()(0, 1) == 1.0);
  CHECK(*stability_partition(d1, s1).h == 3);
  for (int k = 0; k < 6; ++k) {
    const double lambda = s1.eigenvalues(k);
    const bool expected = k >= 2;
    CHECK(hurwitz_2x2(d1.mode_matrix(lambda)) == expected);
    // det(A - lambda F) = lambda^2/2 + lambda (1.5 w - m/2) + m^2/4 + w^2 with w = 1
    const double det = 0.5 * lambda * lambda + lambda * (1.5 - mid1 / 2) + mid1 * mid1 / 4 + 1.0;
    CHECK(d1.mode_matrix(lambda).determinant() == doctest::Approx(det));
  }

  const auto s2 = decompose(fixtures::example2_weights());
  const auto d2 = design_second_order(s2, 3);
  CHECK(std::sqrt(s2.eigenvalues(1) * s2.eigenvalues(2)) == doctest::Approx(0.2525).epsilon(1e-3));
  CHECK(*stability_partition(d2, s2).h == 3);
}

TEST_CASE("designer rejects empty gaps and bad targets") {
  const auto k3 = eigendecompose(laplacian(fixtures::k3()));
  CHECK_THROWS_AS(design_second_order(k3, 3), DesignError);
  const auto s = decompose(fixtures::example1_weights());
  CHECK_THROWS_AS(design_second_order(s, 2), DesignError);
  CHECK_THROWS_AS(design_second_order(s, 7), DesignError);
  CHECK_THROWS_AS(design_second_order(s, 3, 0.0), DesignError);
  CHECK_THROWS_AS(design_second_order(eigendecompose(laplacian(fixtures::two_triangles())), 3), DesignError);
}

TEST_CASE("designer outputs: monotone flags and clean validation") {
  fixtures::Rng rng(41);
  int designs = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = fixtures::uniform_int(rng, 3, 20);
    const auto s = decompose(fixtures::random_connected_weights(rng, n, 0.3));
    const int h = fixtures::uniform_int(rng, 3, n);
    if (s.eigenvalues(h - 1) - s.eigenvalues(h - 2) <= degeneracy_tolerance(s)) continue;
    const double omega = fixtures::uniform(rng, 0.1, 3.0);
    const auto dyn = design_second_order(s, h, omega);
    const auto part = stability_partition(dyn, s);
    REQUIRE(part.h.has_value());
    CHECK(*part.h == h);
    for (int k = 1; k < n; ++k) CHECK(part.hurwitz[k] >= part.hurwitz[k - 1]);
    CHECK(count_warnings(validate_design(dyn, s)) == 0);
    ++designs;
  }
  CHECK(designs > 50);
}

TEST_CASE("expm against closed form and eigen-decomposition oracle") {
  Eigen::Matrix2d a;
  a << 0.25, 1, -1, 0.25;
  for (const double t : {0.0, 0.5, 1.0, 7.0}) {
    const Eigen::MatrixXd e = expm(a * t);
    Eigen::Matrix2d closed;
    closed << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    closed *= std::exp(0.25 * t);
    CHECK((e - closed).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, closed.norm()));
  }
  fixtures::Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = fixtures::uniform_int(rng, 1, 5);
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = fixtures::uniform(rng, -3, 3);
    const Eigen::VectorXd x0 = Eigen::VectorXd::Random(d);
    const Eigen::VectorXd expected = fixtures::exact_flow(m, x0, 1.3);
    CHECK((expm(m * 1.3) * x0 - expected).norm() < 1e-9 * std::max(1.0, expected.norm()));
  }
}
