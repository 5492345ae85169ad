#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fsistab/generator.hpp"

#include <cmath>

using namespace fsistab;

namespace {
AmbientField shear_field(const Grid& g, double amp) {
  // tangential field with a nonzero trace on the interface (U.n = 0 on walls)
  Vec U1(g.N), U2 = Vec::Zero(g.N);
  for (int k = 0; k < g.N; ++k)
    U1(k) = amp * g.x(k) * (g.geo.L1 - g.x(k)) * (g.y(k) + g.geo.L2);
  return {AmbientPreset::Zero, amp, U1, U2, 1.0 + 2 * amp};
}
}  // namespace

TEST_CASE("constructor validation") {
  Grid g{Geometry(1, 1, 8, 8)};
  auto U = build_ambient(g, AmbientPreset::Zero, 0.0);
  CHECK_THROWS_AS(Generator(g, U, 2), std::invalid_argument);
  CHECK_THROWS_AS(Generator(g, U, -1), std::invalid_argument);
  CHECK_THROWS_AS(Generator(g, U, 0, Coeffs{-1.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Generator(g, U, 0, Coeffs{1.0, -0.5, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Generator(g, U, 0, Coeffs{1.0, 1.0, 0.0}),
                  std::invalid_argument);
  CHECK_NOTHROW(Generator(g, U, 1, Coeffs{1.0, 0.0, 1.0}));  // lambda = 0 ok
}

TEST_CASE("reduced dimension bookkeeping") {
  Grid g{Geometry(1, 1, 16, 16)};
  Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
  int nx = 16, ny = 16;
  int expect = nx * ny + (nx - 1) * (ny + 1) + (nx + 1) * (ny - 1) +
               2 * (nx - 1);
  CHECK(A.dim() == expect);
  CHECK(A.npdof() == nx * ny);
}

TEST_CASE("mass matrix defines a positive norm; roundtrip through fields") {
  Grid g{Geometry(1, 1, 16, 16)};
  Generator A(g, shear_field(g, 1.0), 1);
  Vec X = A.random_state(5, false);
  CHECK(A.hnorm2(X) > 0.0);
  Vec X2 = A.reduce(A.fields(X));
  CHECK((X2 - X).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("interface tie: u2 on top equals v + kappa U1 dw/dx") {
  Grid g{Geometry(1, 1, 16, 16)};
  auto U = shear_field(g, 1.0);
  Generator A(g, U, 1);
  Vec X = A.random_state(6, false);
  Fields f = A.fields(X);
  Vec dw = A.Db() * f.w;
  for (int i = 0; i < g.nb; ++i) {
    double want = f.v(i) + A.U1top()(i) * dw(i);
    CHECK(f.u2(g.top[i]) == doctest::Approx(want).epsilon(1e-12));
  }
  // clamped beam ends and rigid-wall normal velocities
  CHECK(f.w(0) == 0.0);
  CHECK(f.w(g.nb - 1) == 0.0);
  CHECK(f.v(0) == 0.0);
  for (int i = 0; i < g.nb; ++i) {
    CHECK(f.u1(g.left[i]) == 0.0);
    CHECK(f.u1(g.right[i]) == 0.0);
    CHECK(f.u2(g.bot[i]) == 0.0);
  }
}

TEST_CASE("quadratic energy identity <GX,X> = -Diss + Sdiv + Skappa") {
  struct Case {
    int kappa;
    AmbientPreset preset;
  };
  Grid g{Geometry(1, 1, 16, 16)};
  for (auto [kappa, preset] : {Case{0, AmbientPreset::Zero},
                               Case{0, AmbientPreset::SolenoidalVortex},
                               Case{1, AmbientPreset::SolenoidalVortex},
                               Case{1, AmbientPreset::SmallDiv}}) {
    Generator A(g, build_ambient(g, preset, 1.0), kappa);
    Vec X = A.random_state(3, false);
    double lhs = X.dot(A.G() * X);
    double rhs = -A.diss(X) + A.sdiv_rate(X) + A.skappa_rate(X);
    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-12);
  }
  // with a nonzero interface trace the kappa term is active and still exact
  Generator A(g, shear_field(g, 1.0), 1);
  Vec X = A.random_state(3, false);
  CHECK(std::abs(A.skappa_rate(X)) > 1.0);
  double lhs = X.dot(A.G() * X);
  double rhs = -A.diss(X) + A.sdiv_rate(X) + A.skappa_rate(X);
  CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-12);
}

TEST_CASE("dissipation is nonnegative and zero only without velocity") {
  Grid g{Geometry(1, 1, 16, 16)};
  Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
  Vec X = A.random_state(4, false);
  CHECK(A.diss(X) > 0.0);
  CHECK(A.diss(A.null_vector()) == doctest::Approx(0.0));
}

TEST_CASE("null vector: structure and residual") {
  for (int n : {16, 32}) {
    Grid g{Geometry(1, 1, n, n)};
    Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
    Vec n0 = A.null_vector();
    Fields f = A.fields(n0);
    CHECK((f.p - Vec::Ones(g.N)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(f.u1.cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.u2.cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.v.cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.w.maxCoeff() > 0.0);  // beam bends into the load
    CHECK(A.null_residual() <= 1e-10);
    // <n0,n0>_H approximates 1 + 1/720 (uniform-load bending energy)
    CHECK(A.hnorm2(n0) == doctest::Approx(1.0 + 1.0 / 720).epsilon(2e-4));
  }
}

TEST_CASE("null vector persists for kappa = 1 with a compatible ambient") {
  Grid g{Geometry(1, 1, 16, 16)};
  Generator A(g, build_ambient(g, AmbientPreset::SolenoidalVortex, 1.0), 1);
  CHECK(A.null_residual() <= 1e-10);
}

TEST_CASE("off-null projection removes the n0 component") {
  Grid g{Geometry(1, 1, 16, 16)};
  Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
  Vec n0 = A.null_vector();
  Vec X = A.random_state(8);
  Vec Y = A.project_offnull(X);
  CHECK(std::abs(A.hdot(Y, n0)) < 1e-12);
  CHECK((A.project_offnull(Y) - Y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("off-null projection of the constant-pressure state") {
  // [1, 0, 0, 0] projects to p = const ~ 1/721, w = -(720/721) * bending
  Grid g{Geometry(1, 1, 32, 32)};
  Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
  Vec X = Vec::Zero(A.dim());
  X.head(A.npdof()).setOnes();  // p = 1 everywhere
  Fields f = A.fields(A.project_offnull(X));
  double pc = f.p(g.N / 2);
  CHECK((f.p - Vec::Constant(g.N, pc)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(pc == doctest::Approx(1.0 / 721).epsilon(0.05));
  Fields n0f = A.fields(A.null_vector());
  CHECK(f.w(g.nb / 2) ==
        doctest::Approx(-(720.0 / 721) * n0f.w(g.nb / 2)).epsilon(0.05));
}

TEST_CASE("Q is in the kernel of the adjoint dynamics (U=0, kappa=0)") {
  Grid g{Geometry(1, 1, 16, 16)};
  Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
  Vec X = A.random_state(7);
  CHECK(std::abs(A.Q(A.apply(X))) < 1e-12);
}

TEST_CASE("random states are deterministic in the seed and unit-normalized") {
  Grid g{Geometry(1, 1, 16, 16)};
  Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
  Vec a = A.random_state(42), b = A.random_state(42), c = A.random_state(43);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);
  CHECK(A.hnorm2(a) == doctest::Approx(1.0).epsilon(1e-12));
  Vec raw = A.random_state(42, false);
  CHECK(raw.cwiseAbs().maxCoeff() <= 1.0);
}
