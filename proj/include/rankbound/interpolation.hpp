#pragma once

#include <vector>

#include "rankbound/monodromy.hpp"
#include "rankbound/numerics.hpp"

namespace rankbound {

struct InterpolationVerdict {
  int q = 0;
  long long n_monomials = 0;
  long long n_points = 0;
  long long rank = 0;
  bool full_rank = false;            // rank == n_monomials
  bool insufficient_points = false;  // n_points < n_monomials: no certificate possible
  double smallest_kept_sv_ratio = 0.0;  // s_rank / s_max, the certificate margin
};

/// Exponent vectors of all monomials of total degree q in n_vars variables,
/// in graded-lex order (lexicographically descending within the degree).
/// Refuses enumerations beyond 5e6 monomials.
std::vector<std::vector<int>> homogeneous_monomials(int n_vars, int q);

/// Evaluation matrix for points already given in homogeneous coordinates
/// s in C^n (rows: points, columns: degree-q monomials of n variables).
/// Each row is rescaled to unit max-abs entry.
CMatrix monomial_matrix(const std::vector<CVector>& points_s, int q);

/// Evaluation matrix for affine slice points t in C^ell: each point is
/// homogenized to (t, 1) — homogenizing coordinate last — normalized to unit
/// Euclidean norm, then evaluated as in monomial_matrix.
CMatrix build_matrix(const std::vector<CVector>& points_t, int q);

/// Rank verdict for degree q on explicit slice points.
InterpolationVerdict nonvanishing_points(const std::vector<CVector>& points_t, int q,
                                         double rank_rel_tol = 1e-8);

/// Rank verdict for degree q on the witness points of ws. Full rank
/// certifies that no nonzero polynomial of degree q vanishes on the sampled
/// variety's slice, i.e. its degree exceeds q.
InterpolationVerdict nonvanishing(const WitnessSet& ws, int q, double rank_rel_tol = 1e-8);

}  // namespace rankbound
