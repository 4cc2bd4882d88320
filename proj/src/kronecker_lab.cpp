#include "rankbound/kronecker_lab.hpp"

#include <algorithm>
#include <cmath>

#include "rankbound/formats.hpp"
#include "rankbound/interpolation.hpp"

namespace rankbound {

namespace {

constexpr double kMaxDenseEntries = 1e7;
constexpr std::size_t kMaxCompositions = 200000;

void check_power_size(long long n_cells, int q) {
  if (n_cells < 1) throw std::invalid_argument("tensor must have at least one entry");
  if (q < 1) throw std::invalid_argument("power must be at least 1");
  double entries = 1.0;
  for (int i = 0; i < q; ++i) {
    entries *= static_cast<double>(n_cells);
    if (entries > kMaxDenseEntries)
      throw std::invalid_argument("kronecker power would exceed the dense size guard");
  }
}

int composition_degree(const Composition& g) {
  int q = 0;
  for (const int e : g) {
    if (e < 0) throw std::invalid_argument("composition entries must be nonnegative");
    q += e;
  }
  return q;
}

}  // namespace

std::vector<Composition> compositions(long long n_cells, int q) {
  if (n_cells < 1 || n_cells > static_cast<long long>(kMaxCompositions))
    throw std::invalid_argument("compositions: cell count out of range");
  // Same objects as degree-q exponent vectors, same canonical order.
  return homogeneous_monomials(static_cast<int>(n_cells), q);
}

CVector kronecker_power(const CVector& T, int q) {
  const long long n = T.size();
  check_power_size(n, q);
  CVector result = T;
  for (int step = 1; step < q; ++step) {
    CVector next(result.size() * n);
    for (Eigen::Index i = 0; i < result.size(); ++i)
      for (Eigen::Index j = 0; j < n; ++j) next(i * n + j) = result(i) * T(j);
    result.swap(next);
  }
  return result;
}

Complex coefficient(const CVector& T, const Composition& g) {
  if (static_cast<long long>(g.size()) != T.size())
    throw std::invalid_argument("coefficient: composition length must match tensor size");
  composition_degree(g);
  Complex value(1.0, 0.0);
  for (std::size_t cell = 0; cell < g.size(); ++cell) {
    for (int e = 0; e < g[cell]; ++e) value *= T(static_cast<Eigen::Index>(cell));
  }
  return value;
}

SparseCVector basis_vector(const Composition& g) {
  const long long n = static_cast<long long>(g.size());
  const int q = composition_degree(g);
  check_power_size(n, std::max(q, 1));

  SparseCVector out;
  double dim = 1.0;
  for (int i = 0; i < q; ++i) dim *= static_cast<double>(n);
  out.dim = static_cast<std::size_t>(dim);

  // The positions with index multiset g are exactly the distinct
  // rearrangements of the sorted index word.
  std::vector<int> word;
  word.reserve(q);
  for (std::size_t cell = 0; cell < g.size(); ++cell)
    word.insert(word.end(), g[cell], static_cast<int>(cell));
  if (word.empty()) {
    out.entries.emplace_back(0, Complex(1.0, 0.0));
    return out;
  }
  do {
    std::size_t index = 0;
    for (const int digit : word) index = index * static_cast<std::size_t>(n) + digit;
    out.entries.emplace_back(index, Complex(1.0, 0.0));
  } while (std::next_permutation(word.begin(), word.end()));
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

double verify_decomposition(const CVector& T, int q) {
  const CVector power = kronecker_power(T, q);
  CVector reconstructed = CVector::Zero(power.size());
  for (const auto& g : compositions(T.size(), q)) {
    const Complex value = coefficient(T, g);
    for (const auto& [index, one] : basis_vector(g).entries)
      reconstructed(static_cast<Eigen::Index>(index)) += value * one;
  }
  return (power - reconstructed).norm();
}

long long span_dimension(int a, int b, int c, int q, int n_samples, Rng& rng,
                         double rank_rel_tol) {
  const Format probe(a, b, c, 1);
  const long long n_cells = probe.ambient_dim();
  const auto comps = compositions(n_cells, q);
  if (comps.size() > 20000)
    throw std::invalid_argument("span_dimension: composition count exceeds the size guard");
  if (n_samples < static_cast<int>(comps.size()) + 5)
    throw std::invalid_argument(
        "span_dimension: need at least #compositions + 5 samples for a stable rank");

  CMatrix M(n_samples, static_cast<Eigen::Index>(comps.size()));
  for (int s = 0; s < n_samples; ++s) {
    const CVector T = rng.cgaussian_vector(n_cells);
    // Power table per sample keeps each coefficient at one product.
    std::vector<std::vector<Complex>> powers(static_cast<std::size_t>(n_cells),
                                             std::vector<Complex>(q + 1));
    for (long long cell = 0; cell < n_cells; ++cell) {
      powers[cell][0] = Complex(1.0, 0.0);
      for (int e = 1; e <= q; ++e) powers[cell][e] = powers[cell][e - 1] * T(cell);
    }
    for (std::size_t j = 0; j < comps.size(); ++j) {
      Complex value(1.0, 0.0);
      for (long long cell = 0; cell < n_cells; ++cell) {
        const int e = comps[j][static_cast<std::size_t>(cell)];
        if (e > 0) value *= powers[cell][e];
      }
      M(s, static_cast<Eigen::Index>(j)) = value;
    }
  }
  return numeric_rank(M, rank_rel_tol).rank;
}

}  // namespace rankbound
