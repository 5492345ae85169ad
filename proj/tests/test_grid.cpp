#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fsistab/grid.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

using namespace fsistab;

namespace {
Vec random_vec(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(n);
  for (int k = 0; k < n; ++k) v(k) = u(rng);
  return v;
}
}  // namespace

TEST_CASE("sbp pair satisfies the duality H Dp + (H Dm)^T = B exactly") {
  for (int n : {8, 16, 33}) {
    double h = 1.0 / n;
    auto s = sbp_pair(n, h);
    Eigen::MatrixXd lhs = s.H.asDiagonal() * Eigen::MatrixXd(s.Dp) +
                          (s.H.asDiagonal() * Eigen::MatrixXd(s.Dm)).transpose();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + 1, n + 1);
    B(0, 0) = -1.0;
    B(n, n) = 1.0;
    CHECK((lhs - B).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(s.H.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.H.minCoeff() > 0.0);
  }
}

TEST_CASE("sbp pair is exact on constants and linears") {
  int n = 16;
  auto s = sbp_pair(n, 1.0 / n);
  Vec one = Vec::Ones(n + 1), x(n + 1);
  for (int k = 0; k <= n; ++k) x(k) = double(k) / n;
  CHECK((s.Dp * one).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((s.Dm * one).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((s.Dp * x - one).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((s.Dm * x - one).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("x-derivative converges at second order in the interior") {
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    Grid g{Geometry(1, 1, n, n)};
    Vec f(g.N), dex(g.N);
    for (int k = 0; k < g.N; ++k) {
      f(k) = std::sin(M_PI * g.x(k));
      dex(k) = M_PI * std::cos(M_PI * g.x(k));
    }
    double err = (g.Dxp * f - dex).cwiseAbs().maxCoeff();
    if (prev > 0.0) CHECK(prev / err > 1.7);  // boundary rows are first order
    prev = err;
  }
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(Geometry(0.0, 1.0, 16, 16), std::invalid_argument);
  CHECK_THROWS_AS(Geometry(1.0, -1.0, 16, 16), std::invalid_argument);
  CHECK_THROWS_AS(Geometry(1.0, 1.0, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(Geometry(1.0, 1.0, 16, 7), std::invalid_argument);
  Geometry g(2.0, 1.0, 16, 8);
  CHECK(g.hx == doctest::Approx(0.125));
  CHECK(g.hy == doctest::Approx(0.125));
}

TEST_CASE("discrete Green identity holds to rounding for random fields") {
  for (int n : {8, 16, 32}) {
    Grid g{Geometry(1, 1, n, n)};
    for (int trial = 0; trial < 10; ++trial) {
      Vec p = random_vec(g.N, 100 * n + trial);
      Vec u1 = random_vec(g.N, 200 * n + trial);
      Vec u2 = random_vec(g.N, 300 * n + trial);
      double lhs = wdot(g.Wo, g.Dxp * p, u1) + wdot(g.Wo, g.Dyp * p, u2) +
                   wdot(g.Wo, p, g.Dxm * u1 + g.Dym * u2);
      double rhs = g.flux_x(p, u1) + g.flux_y(p, u2);
      CHECK(std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1) < 1e-12);
    }
  }
}

TEST_CASE("beam stiffness is the quadrature form of D2 on clamped fields") {
  Grid g{Geometry(1, 1, 16, 16)};
  Vec w = Vec::Zero(g.nb), v = Vec::Zero(g.nb);
  w.segment(1, g.nb - 2) = random_vec(g.nb - 2, 7);
  v.segment(1, g.nb - 2) = random_vec(g.nb - 2, 8);
  double lhs = 0.0;
  Vec Kw = g.Kb * w;
  for (int k = 1; k < g.nb - 1; ++k) lhs += v(k) * Kw(k);
  double rhs = wdot(g.Wq, g.D2 * w, g.D2 * v);
  CHECK(std::abs(lhs - rhs) / (std::abs(rhs) + 1) < 1e-13);
}

TEST_CASE("beam stiffness is symmetric positive semidefinite") {
  Grid g{Geometry(1, 1, 16, 16)};
  Eigen::MatrixXd K(g.Kb);
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  Vec w = random_vec(g.nb, 9);
  CHECK(w.dot(K * w) >= -1e-12);
}

TEST_CASE("quadrature weights integrate the domain measure") {
  Grid g{Geometry(2, 0.5, 16, 8)};
  CHECK(g.Wo.sum() == doctest::Approx(1.0).epsilon(1e-13));   // 2 * 0.5
  CHECK(g.Wb.sum() == doctest::Approx(2.0).epsilon(1e-13));   // L1
  CHECK(g.interior.sum() == doctest::Approx((16 - 1) * (8 - 1)));
}

TEST_CASE("boundary index sets partition the boundary correctly") {
  Grid g{Geometry(1, 1, 8, 8)};
  CHECK(int(g.top.size()) == g.nb);
  for (int i = 0; i < g.nb; ++i) {
    CHECK(g.y(g.top[i]) == doctest::Approx(0.0));
    CHECK(g.y(g.bot[i]) == doctest::Approx(-1.0));
    CHECK(g.x(g.left[i]) == doctest::Approx(0.0));
    CHECK(g.x(g.right[i]) == doctest::Approx(1.0));
  }
}

TEST_CASE("central beam derivative is exact on linears") {
  SpMat Db = sbp_central(16, 1.0 / 16);
  Vec x(17);
  for (int k = 0; k <= 16; ++k) x(k) = k / 16.0;
  CHECK((Db * x - Vec::Ones(17)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((Db * Vec::Ones(17)).cwiseAbs().maxCoeff() < 1e-13);
}
