#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "rankbound/kronecker_lab.hpp"

using namespace rankbound;

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long multinomial(const Composition& g) {
  int q = 0;
  for (int e : g) q += e;
  long long denom = 1;
  for (int e : g) denom *= factorial(e);
  return factorial(q) / denom;
}

}  // namespace

TEST_CASE("kronecker power basics") {
  CVector t(2);
  t << Complex(2, 0), Complex(0, 1);

  const CVector first = kronecker_power(t, 1);
  CHECK((first - t).norm() == 0.0);

  const CVector square = kronecker_power(t, 2);
  REQUIRE(square.size() == 4);
  CHECK(std::abs(square(0) - Complex(4, 0)) < 1e-15);   // t0 * t0
  CHECK(std::abs(square(1) - Complex(0, 2)) < 1e-15);   // t0 * t1
  CHECK(std::abs(square(2) - Complex(0, 2)) < 1e-15);   // t1 * t0
  CHECK(std::abs(square(3) - Complex(-1, 0)) < 1e-15);  // t1 * t1

  // Norm multiplicativity |T^(x q)| = |T|^q.
  CHECK(std::abs(square.norm() - std::pow(t.norm(), 2)) < 1e-12);

  // Indicator tensors stay indicators.
  CVector e = CVector::Zero(3);
  e(1) = Complex(1, 0);
  const CVector cube = kronecker_power(e, 3);
  CHECK(std::abs(cube(1 * 9 + 1 * 3 + 1) - Complex(1, 0)) == 0.0);
  CHECK(std::abs(cube.norm() - 1.0) < 1e-15);

  CHECK_THROWS_AS(kronecker_power(CVector::Zero(10), 8), std::invalid_argument);  // guard
}

TEST_CASE("compositions agree with stars-and-bars counts") {
  CHECK(compositions(2, 2).size() == 3);
  CHECK(compositions(8, 2).size() == 36);
  CHECK(compositions(3, 4).size() == 15);
  for (const auto& g : compositions(8, 2)) {
    int total = 0;
    for (int e : g) total += e;
    CHECK(total == 2);
    CHECK(g.size() == 8);
  }
}

TEST_CASE("coefficient is the exponent-weighted product") {
  CVector t(3);
  t << Complex(2, 0), Complex(1, 1), Complex(0, -1);

  Composition concentrated{3, 0, 0};
  CHECK(std::abs(coefficient(t, concentrated) - Complex(8, 0)) < 1e-15);

  Composition mixed{1, 2, 0};
  CHECK(std::abs(coefficient(t, mixed) - Complex(2, 0) * Complex(1, 1) * Complex(1, 1)) < 1e-15);

  Composition zero{0, 0, 0};
  CHECK(std::abs(coefficient(t, zero) - Complex(1, 0)) < 1e-15);

  CHECK_THROWS_AS(coefficient(t, Composition{1, 1}), std::invalid_argument);
}

TEST_CASE("basis vectors enumerate index rearrangements") {
  // Concentrated composition: single position.
  {
    const SparseCVector v = basis_vector(Composition{0, 2, 0});
    REQUIRE(v.entries.size() == 1);
    CHECK(v.dim == 9);
    CHECK(v.entries[0].first == 1u * 3 + 1);
  }
  // Mixed composition over two cells: both orders appear.
  {
    const SparseCVector v = basis_vector(Composition{1, 1});
    REQUIRE(v.entries.size() == 2);
    CHECK(v.entries[0].first == 0u * 2 + 1);
    CHECK(v.entries[1].first == 1u * 2 + 0);
  }
  // Entry counts match the multinomial for every composition of small cases.
  for (const auto& [n_cells, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {4, 2}}) {
    for (const auto& g : compositions(n_cells, q)) {
      CHECK(static_cast<long long>(basis_vector(g).entries.size()) == multinomial(g));
    }
  }
}

TEST_CASE("basis supports partition the full index range") {
  for (const auto& [n_cells, q] : std::vector<std::pair<int, int>>{{2, 3}, {4, 3}, {8, 2}}) {
    std::set<std::size_t> seen;
    double total = 0;
    for (const auto& g : compositions(n_cells, q)) {
      for (const auto& [index, value] : basis_vector(g).entries) {
        CHECK(!seen.count(index));  // disjoint supports
        seen.insert(index);
      }
      total += static_cast<double>(basis_vector(g).entries.size());
    }
    CHECK(total == std::pow(n_cells, q));  // complete cover
    CHECK(seen.size() == static_cast<std::size_t>(std::pow(n_cells, q)));
  }
}

TEST_CASE("the decomposition reconstructs the Kronecker power") {
  Rng rng(55);
  SUBCASE("first power is exact") {
    const CVector t = rng.cgaussian_vector(6);
    CHECK(verify_decomposition(t, 1) == 0.0);
  }
  SUBCASE("random tensors across formats") {
    const struct {
      int cells, q;
    } cases[] = {{8, 2}, {8, 3}, {12, 2}, {12, 3}, {27, 2}, {2, 5}};
    for (const auto& c : cases) {
      for (int trial = 0; trial < 5; ++trial) {
        const CVector t = rng.cgaussian_vector(c.cells);
        const double residual = verify_decomposition(t, c.q);
        CHECK(residual <= 1e-12 * std::pow(t.norm(), c.q));
      }
    }
  }
}

TEST_CASE("span dimension equals the composition count") {
  SUBCASE("cube format, square power") {
    Rng rng(60);
    CHECK(span_dimension(2, 2, 2, 2, 45, rng) == 36);
  }
  SUBCASE("tiny format") {
    Rng rng(61);
    CHECK(span_dimension(1, 1, 2, 2, 10, rng) == 3);
  }
  SUBCASE("first power spans the whole space") {
    Rng rng(62);
    CHECK(span_dimension(2, 2, 2, 1, 20, rng) == 8);
  }
  SUBCASE("sample floor is enforced") {
    Rng rng(63);
    CHECK_THROWS_AS(span_dimension(2, 2, 2, 2, 38, rng), std::invalid_argument);
  }
}

TEST_CASE("coefficients match kronecker power entries at representative indices") {
  Rng rng(70);
  const CVector t = rng.cgaussian_vector(4);
  const CVector power = kronecker_power(t, 3);
  for (const auto& g : compositions(4, 3)) {
    const SparseCVector basis = basis_vector(g);
    const Complex expected = coefficient(t, g);
    for (const auto& [index, value] : basis.entries) {
      CHECK(std::abs(power(static_cast<Eigen::Index>(index)) - expected) <=
            1e-13 * std::abs(expected) + 1e-15);
    }
  }
}
