#include <doctest.h>

#include <cmath>

#include "rankbound/rng.hpp"
#include "rankbound/segre_system.hpp"

using namespace rankbound;

namespace {

// Central finite difference of a vector function along coordinate j of z.
template <typename Fn>
CVector central_diff(Fn&& fn, const CVector& z, Eigen::Index j, double step) {
  CVector lo = z, hi = z;
  hi(j) += step;
  lo(j) -= step;
  return (fn(hi) - fn(lo)) / (2.0 * step);
}

}  // namespace

TEST_CASE("rank-one parametrization matches the outer product by hand") {
  const Format f(2, 2, 2, 1);
  REQUIRE(f.chart_unknowns() == 4);
  CVector u(4);
  const Complex alpha(0.5, -1.0), beta(2.0, 0.25), c0(1.0, 1.0), c1(-3.0, 0.0);
  u << alpha, beta, c0, c1;

  const CVector T = parametrize_tensor(f, u);
  REQUIRE(T.size() == 8);
  const Complex a[2] = {alpha, Complex(1, 0)};
  const Complex b[2] = {beta, Complex(1, 0)};
  const Complex c[2] = {c0, c1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) CHECK(std::abs(T((i * 2 + j) * 2 + k) - a[i] * b[j] * c[k]) == 0.0);
}

TEST_CASE("opposite summands cancel to the zero tensor") {
  const Format f(2, 2, 2, 2);
  Rng rng(17);
  CVector u(f.chart_unknowns());
  const CVector one = rng.cgaussian_vector(4);
  u.head(4) = one;
  u.segment(4, 2) = one.head(2);  // same a, b blocks
  u.tail(2) = -one.tail(2);       // negated c block
  CHECK(parametrize_tensor(f, u).norm() == 0.0);
}

TEST_CASE("flattening rank is bounded by the summand count") {
  Rng rng(18);
  for (int r = 1; r <= 3; ++r) {
    const Format f(3, 4, 5, r);
    const CVector T = parametrize_tensor(f, rng.cgaussian_vector(f.chart_unknowns()));
    // a-flattening: row i holds the slice T[i, :, :], row-major in (j, k).
    CMatrix flat(f.a, f.b * f.c);
    for (int i = 0; i < f.a; ++i)
      for (int jk = 0; jk < f.b * f.c; ++jk) flat(i, jk) = T(i * f.b * f.c + jk);
    CHECK(numeric_rank(flat).rank == std::min(r, f.a));
  }
}

TEST_CASE("the map is linear in each third-factor block") {
  const Format f(2, 3, 4, 2);
  Rng rng(19);
  const CVector u = rng.cgaussian_vector(f.chart_unknowns());
  const int block = f.summand_unknowns();

  // Zeroing the c-block of summand 2 isolates summand 1 and vice versa.
  CVector only1 = u, only2 = u;
  only1.segment(block + f.a + f.b - 2, f.c).setZero();
  only2.segment(f.a + f.b - 2, f.c).setZero();
  const CVector t1 = parametrize_tensor(f, only1);
  const CVector t2 = parametrize_tensor(f, only2);
  CHECK((parametrize_tensor(f, u) - t1 - t2).norm() < 1e-13 * (t1.norm() + t2.norm()));

  const Complex lambda(0.5, 2.0);
  CVector scaled = u;
  scaled.segment(block + f.a + f.b - 2, f.c) *= lambda;
  CHECK((parametrize_tensor(f, scaled) - t1 - lambda * t2).norm() <
        1e-13 * (t1.norm() + std::abs(lambda) * t2.norm()));
}

TEST_CASE("tensor jacobian agrees with central differences") {
  const Format f(3, 3, 4, 2);
  Rng rng(23);
  const CVector u = rng.cgaussian_vector(f.chart_unknowns());
  const CMatrix J = tensor_jacobian(f, u);
  REQUIRE(J.rows() == f.ambient_dim());
  REQUIRE(J.cols() == f.chart_unknowns());

  const double step = 1e-7;
  auto fn = [&](const CVector& x) { return parametrize_tensor(f, x); };
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    // Differentiate along the real axis; holomorphy makes this the full column.
    CHECK((central_diff(fn, u, j, step) - J.col(j)).norm() <= 1e-6);
  }
}

TEST_CASE("square system jacobian: structure and finite differences") {
  const Format f(3, 3, 3, 4);
  const SecantProfile p = secant_dimension(f, 5);
  REQUIRE(p.codim == 1);
  auto [sp, seed] = seed_witness(p, 5);

  const CMatrix J = jacobian(f, p, sp, seed.u, seed.t);
  const long long n_u = f.chart_unknowns();
  const long long ambient = f.ambient_dim();
  REQUIRE(J.rows() == n_u + p.codim);
  REQUIRE(J.cols() == n_u + p.codim);

  SUBCASE("blocks are laid out as [dT/du, -A; H, 0]") {
    CHECK((J.topLeftCorner(ambient, n_u) - tensor_jacobian(f, seed.u)).norm() == 0.0);
    CHECK((J.topRightCorner(ambient, p.codim) + sp.A).norm() == 0.0);
    CHECK((J.bottomLeftCorner(p.fiber_dim, n_u) - sp.H).norm() == 0.0);
    CHECK(J.bottomRightCorner(p.fiber_dim, p.codim).norm() == 0.0);
  }

  SUBCASE("finite differences across the joint variable") {
    CVector z(n_u + p.codim);
    z << seed.u, seed.t;
    auto fn = [&](const CVector& w) {
      return evaluate(f, p, sp, w.head(n_u), w.tail(p.codim));
    };
    const double step = 1e-7;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      CHECK((central_diff(fn, z, j, step) - J.col(j)).norm() <= 1e-6);
    }
  }
}

TEST_CASE("secant dimension measurements") {
  SUBCASE("filling secant of the binary cube") {
    const SecantProfile p = secant_dimension(Format(2, 2, 2, 2), 7);
    CHECK(p.dim == 8);
    CHECK(p.codim == 0);
    CHECK(p.fiber_dim == 0);
  }
  SUBCASE("the classical hypersurface secant") {
    const SecantProfile p = secant_dimension(Format(3, 3, 3, 4), 7);
    CHECK(p.dim == 26);
    CHECK(p.codim == 1);
    CHECK(p.fiber_dim == 2);
  }
  SUBCASE("a codimension-two secant") {
    const SecantProfile p = secant_dimension(Format(4, 4, 8, 9), 7);
    CHECK(p.dim == 126);
    CHECK(p.codim == 2);
    CHECK(p.fiber_dim == 0);
  }
  SUBCASE("a codimension-three secant") {
    const SecantProfile p = secant_dimension(Format(4, 4, 5, 7), 7);
    CHECK(p.dim == 77);
    CHECK(p.codim == 3);
    CHECK(p.fiber_dim == 0);
  }
}

TEST_CASE("chart jacobian rank is stable across many random points") {
  const Format f(2, 2, 3, 2);  // n_u = 10, ambient 12, non-defective
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const CMatrix J = tensor_jacobian(f, rng.cgaussian_vector(f.chart_unknowns()));
    CHECK(numeric_rank(J).rank == 10);
  }
}

TEST_CASE("generic border rank search") {
  CHECK(generic_border_rank(2, 2, 2, 11) == 2);
  CHECK(generic_border_rank(3, 3, 3, 11) == 5);
}

TEST_CASE("seed witnesses solve their system exactly") {
  const SecantProfile p = secant_dimension(Format(3, 3, 3, 4), 13);
  auto [sp, seed] = seed_witness(p, 13);

  CHECK(seed.residual_norm == 0.0);
  CHECK(evaluate(Format(3, 3, 3, 4), p, sp, seed.u, seed.t).norm() == 0.0);
  CHECK(seed.t.size() == p.codim);
  CHECK(seed.t.norm() == 0.0);

  SUBCASE("identical seeds reproduce identical slices bitwise") {
    auto [sp2, seed2] = seed_witness(p, 13);
    CHECK((sp.A - sp2.A).norm() == 0.0);
    CHECK((sp.B - sp2.B).norm() == 0.0);
    CHECK((sp.H - sp2.H).norm() == 0.0);
    CHECK((sp.u0 - sp2.u0).norm() == 0.0);
    CHECK((seed.u - seed2.u).norm() == 0.0);
  }

  SUBCASE("different seeds explore different slices") {
    auto [sp3, seed3] = seed_witness(p, 14);
    CHECK((sp.A - sp3.A).norm() > 1e-6);
  }
}

TEST_CASE("filling secants cannot seed a slicing system") {
  const SecantProfile p = secant_dimension(Format(2, 2, 2, 2), 31);
  CHECK_THROWS_AS(seed_witness(p, 31), std::invalid_argument);
}
