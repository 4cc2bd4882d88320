#include "rankbound/numerics.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <sstream>

namespace rankbound {

CVector linear_solve(const CMatrix& M, const CVector& v, const Tolerances& tol) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("linear_solve: matrix must be square");
  if (M.rows() != v.size())
    throw std::invalid_argument("linear_solve: right-hand side length mismatch");
  if (M.rows() == 0) return CVector(0);

  Eigen::PartialPivLU<CMatrix> lu(M);
  const double rcond = lu.rcond();
  // rcond of 0 or NaN must fail the check, hence the negated comparison.
  if (!(rcond > 1.0 / tol.cond_limit)) {
    std::ostringstream msg;
    msg << "linear_solve: system is numerically singular (reciprocal condition "
        << rcond << ", limit " << 1.0 / tol.cond_limit << ")";
    throw SingularSystem(msg.str());
  }
  return lu.solve(v);
}

RankResult numeric_rank(const CMatrix& M, double rel_tol) {
  RankResult result;
  if (M.rows() == 0 || M.cols() == 0) {
    result.singular_values = RVector(0);
    return result;
  }
  Eigen::BDCSVD<CMatrix> svd(M);
  result.singular_values = svd.singularValues();
  const double cutoff = rel_tol * result.singular_values(0);
  for (Eigen::Index i = 0; i < result.singular_values.size(); ++i)
    if (result.singular_values(i) > cutoff) ++result.rank;
  return result;
}

}  // namespace rankbound
