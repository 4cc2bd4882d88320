#pragma once

#include <cstdint>
#include <utility>

#include "rankbound/formats.hpp"
#include "rankbound/numerics.hpp"

namespace rankbound {

/// Thrown when repeated randomized dimension measurements fail to agree.
class DisagreementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Measured dimension data for the r-th secant of the Segre variety of
/// format (a, b, c), in affine (cone) convention.
struct SecantProfile {
  Format format;
  long long dim = 0;        // dimension of the secant cone in C^(abc)
  long long codim = 0;      // abc - dim; the slice codimension ell
  long long fiber_dim = 0;  // n_u - dim; generic fiber dimension of the chart map
};

/// Linear slice data. The image slice is the affine ell-plane
/// L = { A t + B : t in C^ell }; the fiber slices pin the chart point to the
/// affine subspace H u = H u0.
struct SliceParams {
  CMatrix A;   // abc x ell, generically full column rank
  CVector B;   // abc
  CMatrix H;   // m x n_u (m may be 0)
  CVector u0;  // n_u; the anchor the fiber slices pass through
};

/// A solution of the square slicing system together with its residual there.
struct Solution {
  CVector u;  // chart coordinates, summand blocks [a_i | b_i | c_i] concatenated
  CVector t;  // slice coordinates, length ell
  double residual_norm = 0.0;
};

/// Flattened tensor sum_i (a_i, 1) (x) (b_i, 1) (x) c_i where the blocks of u
/// are a_i in C^(a-1), b_i in C^(b-1), c_i in C^c. Row-major index (i,j,k).
CVector parametrize_tensor(const Format& f, const CVector& u);

/// Jacobian dT/du of parametrize_tensor, an abc x n_u matrix.
CMatrix tensor_jacobian(const Format& f, const CVector& u);

/// Residual [ T(u) - (A t + B) ; H (u - u0) ] of the square system.
CVector evaluate(const Format& f, const SecantProfile& p, const SliceParams& sp,
                 const CVector& u, const CVector& t);

/// Full system Jacobian [ dT/du, -A ; H, 0 ] with respect to (u, t).
CMatrix jacobian(const Format& f, const SecantProfile& p, const SliceParams& sp,
                 const CVector& u, const CVector& t);

/// Measures dim as the rank of dT/du at random chart points: three
/// independent draws, majority vote. Throws DisagreementError when all three
/// disagree pairwise.
SecantProfile secant_dimension(const Format& f, std::uint64_t rng_seed,
                               double rank_rel_tol = 1e-8);

/// Smallest r whose r-th secant fills C^(abc), found by measuring dimensions
/// around the heuristic starting rank.
int generic_border_rank(int a, int b, int c, std::uint64_t rng_seed = 0);

/// Draws Gaussian slices through a random chart point u0: t = 0 and
/// B = T(u0), so (u0, 0) solves the system by construction. Redraws until
/// the fiber slice matrix has full row rank and the system Jacobian at the
/// seed is well-conditioned. Requires codim >= 1.
std::pair<SliceParams, Solution> seed_witness(const SecantProfile& p, std::uint64_t rng_seed);

}  // namespace rankbound
