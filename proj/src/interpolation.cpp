#include "rankbound/interpolation.hpp"

#include <cmath>

#include "rankbound/bounds.hpp"

namespace rankbound {

namespace {

void append_monomials(int n_vars, int position, int remaining, std::vector<int>& current,
                      std::vector<std::vector<int>>& out) {
  if (position == n_vars - 1) {
    current[position] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[position] = e;
    append_monomials(n_vars, position + 1, remaining - e, current, out);
  }
}

// Row of monomial values for one homogeneous point, built from a power table
// so each monomial costs n_vars multiplications.
void fill_row(CMatrix& M, Eigen::Index row, const CVector& s, int q,
              const std::vector<std::vector<int>>& monomials) {
  const int n_vars = static_cast<int>(s.size());
  std::vector<std::vector<Complex>> powers(n_vars, std::vector<Complex>(q + 1));
  for (int v = 0; v < n_vars; ++v) {
    powers[v][0] = Complex(1.0, 0.0);
    for (int e = 1; e <= q; ++e) powers[v][e] = powers[v][e - 1] * s(v);
  }
  for (std::size_t j = 0; j < monomials.size(); ++j) {
    Complex value(1.0, 0.0);
    for (int v = 0; v < n_vars; ++v) {
      const int e = monomials[j][v];
      if (e > 0) value *= powers[v][e];
    }
    M(row, static_cast<Eigen::Index>(j)) = value;
  }
  const double peak = M.row(row).cwiseAbs().maxCoeff();
  M.row(row) /= peak;
}

}  // namespace

std::vector<std::vector<int>> homogeneous_monomials(int n_vars, int q) {
  if (n_vars < 1) throw std::invalid_argument("homogeneous_monomials: need at least one variable");
  if (q < 0) throw std::invalid_argument("homogeneous_monomials: degree must be nonnegative");
  const double log_count = log_binomial(n_vars + q - 1, q);
  if (log_count > std::log(5e6))
    throw std::invalid_argument("homogeneous_monomials: enumeration would exceed 5e6 monomials");
  std::vector<std::vector<int>> out;
  std::vector<int> current(n_vars, 0);
  append_monomials(n_vars, 0, q, current, out);
  return out;
}

CMatrix monomial_matrix(const std::vector<CVector>& points_s, int q) {
  if (points_s.empty()) throw std::invalid_argument("monomial_matrix: no points given");
  const int n_vars = static_cast<int>(points_s.front().size());
  if (n_vars < 1) throw std::invalid_argument("monomial_matrix: points must have coordinates");
  for (const auto& s : points_s)
    if (static_cast<int>(s.size()) != n_vars)
      throw std::invalid_argument("monomial_matrix: points have mixed dimensions");

  const auto monomials = homogeneous_monomials(n_vars, q);
  CMatrix M(static_cast<Eigen::Index>(points_s.size()),
            static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t i = 0; i < points_s.size(); ++i)
    fill_row(M, static_cast<Eigen::Index>(i), points_s[i], q, monomials);
  return M;
}

CMatrix build_matrix(const std::vector<CVector>& points_t, int q) {
  if (points_t.empty()) throw std::invalid_argument("build_matrix: no points given");
  std::vector<CVector> homogenized;
  homogenized.reserve(points_t.size());
  for (const auto& t : points_t) {
    CVector s(t.size() + 1);
    s.head(t.size()) = t;
    s(t.size()) = Complex(1.0, 0.0);
    s /= s.norm();
    homogenized.push_back(std::move(s));
  }
  return monomial_matrix(homogenized, q);
}

InterpolationVerdict nonvanishing_points(const std::vector<CVector>& points_t, int q,
                                         double rank_rel_tol) {
  const CMatrix M = build_matrix(points_t, q);
  const RankResult rr = numeric_rank(M, rank_rel_tol);

  InterpolationVerdict verdict;
  verdict.q = q;
  verdict.n_monomials = M.cols();
  verdict.n_points = M.rows();
  verdict.rank = rr.rank;
  verdict.full_rank = (rr.rank == M.cols());
  verdict.insufficient_points = (M.rows() < M.cols());
  if (rr.rank >= 1)
    verdict.smallest_kept_sv_ratio = rr.singular_values(rr.rank - 1) / rr.singular_values(0);
  return verdict;
}

InterpolationVerdict nonvanishing(const WitnessSet& ws, int q, double rank_rel_tol) {
  std::vector<CVector> points;
  points.reserve(ws.solutions.size());
  for (const auto& sol : ws.solutions) points.push_back(sol.t);
  return nonvanishing_points(points, q, rank_rel_tol);
}

}  // namespace rankbound
