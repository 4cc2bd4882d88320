#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace rankbound {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Thrown when a square linear system is too ill-conditioned to solve
/// reliably (estimated condition number beyond the configured limit).
class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shared tolerance policy. All thresholds can be overridden per call, but
/// the defaults below are used consistently across the library.
struct Tolerances {
  double rank_rel_tol = 1e-8;    // singular values <= rank_rel_tol * s_max count as zero
  double newton_tol = 1e-10;     // corrector residual target
  double dedupe_tol = 1e-6;      // points closer than this coincide
  double residual_valid = 1e-8;  // stored solutions must re-validate to this
  double cond_limit = 1e14;      // refuse linear solves beyond this condition estimate
};

/// Solves the square system M x = v by partial-pivot LU.
/// Throws SingularSystem when the reciprocal condition estimate indicates a
/// condition number above tol.cond_limit, and std::invalid_argument on shape
/// mismatch.
CVector linear_solve(const CMatrix& M, const CVector& v, const Tolerances& tol = {});

struct RankResult {
  int rank = 0;
  RVector singular_values;  // descending
};

/// Numerical rank of M: the number of singular values strictly greater than
/// rel_tol * s_max. Invariant under row/column permutation and under nonzero
/// global scaling.
RankResult numeric_rank(const CMatrix& M, double rel_tol = 1e-8);

}  // namespace rankbound
