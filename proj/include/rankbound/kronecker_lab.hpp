#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rankbound/numerics.hpp"
#include "rankbound/rng.hpp"

namespace rankbound {

/// An exponent assignment g : cells -> N with sum q, over the n_cells = abc
/// coordinates of a flattened tensor.
using Composition = std::vector<int>;

/// All compositions of q over n_cells cells, graded-lex order.
std::vector<Composition> compositions(long long n_cells, int q);

/// T^(x q), the q-th Kronecker (outer) power of the flattened tensor, with
/// index (d_1, ..., d_q) at position sum d_j * N^(q-1-j). Refuses results
/// larger than 1e7 entries.
CVector kronecker_power(const CVector& T, int q);

/// The product prod_cells T[cell]^g[cell]; the common coefficient of the
/// kronecker_power entries whose index multiset matches g.
Complex coefficient(const CVector& T, const Composition& g);

struct SparseCVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, Complex>> entries;  // sorted by index, values all 1
};

/// Indicator vector of the kronecker_power positions whose index multiset is
/// g; the basis element multiplying coefficient(T, g) in the decomposition.
/// Entry count is the multinomial q! / prod g[cell]!.
SparseCVector basis_vector(const Composition& g);

/// Residual | T^(x q) - sum_g coefficient(T, g) * basis_vector(g) |.
/// Mathematically zero; numerically below 1e-12 * |T|^q.
double verify_decomposition(const CVector& T, int q);

/// Dimension of the span of { restriction of T_s^(x q) to composition
/// coordinates : s = 1..n_samples } for random tensors T_s of format
/// (a, b, c): the rank of the (n_samples x #compositions) coefficient
/// matrix. Requires n_samples >= #compositions + 5 so the rank is not
/// sample-limited.
long long span_dimension(int a, int b, int c, int q, int n_samples, Rng& rng,
                         double rank_rel_tol = 1e-8);

}  // namespace rankbound
