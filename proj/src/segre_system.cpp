#include "rankbound/segre_system.hpp"

#include <Eigen/LU>
#include <sstream>

#include "rankbound/rng.hpp"

namespace rankbound {

namespace {

// Chart vectors of one summand: (a_i, 1), (b_i, 1) and c_i, read from the
// block of u starting at offset.
struct SummandVectors {
  CVector va, vb, vc;
};

SummandVectors summand_vectors(const Format& f, const CVector& u, long long offset) {
  SummandVectors s{CVector(f.a), CVector(f.b), CVector(f.c)};
  long long pos = offset;
  for (int p = 0; p + 1 < f.a; ++p) s.va(p) = u(pos++);
  s.va(f.a - 1) = Complex(1.0, 0.0);
  for (int p = 0; p + 1 < f.b; ++p) s.vb(p) = u(pos++);
  s.vb(f.b - 1) = Complex(1.0, 0.0);
  for (int p = 0; p < f.c; ++p) s.vc(p) = u(pos++);
  return s;
}

void check_chart_length(const Format& f, const CVector& u, const char* who) {
  if (u.size() != f.chart_unknowns()) {
    std::ostringstream msg;
    msg << who << ": chart vector has length " << u.size() << ", expected "
        << f.chart_unknowns();
    throw std::invalid_argument(msg.str());
  }
}

void check_system_shapes(const Format& f, const SecantProfile& p, const SliceParams& sp,
                         const CVector& u, const CVector& t, const char* who) {
  check_chart_length(f, u, who);
  const long long ambient = f.ambient_dim();
  const long long n_u = f.chart_unknowns();
  const long long ell = p.codim;
  const long long m = n_u - p.dim;
  if (ell < 1) throw std::invalid_argument(std::string(who) + ": profile has no slice codimension");
  if (t.size() != ell)
    throw std::invalid_argument(std::string(who) + ": slice coordinate length mismatch");
  if (sp.A.rows() != ambient || sp.A.cols() != ell)
    throw std::invalid_argument(std::string(who) + ": slice matrix A has wrong shape");
  if (sp.B.size() != ambient)
    throw std::invalid_argument(std::string(who) + ": slice offset B has wrong length");
  if (sp.H.rows() != m || sp.H.cols() != n_u)
    throw std::invalid_argument(std::string(who) + ": fiber slice matrix H has wrong shape");
  if (sp.u0.size() != n_u)
    throw std::invalid_argument(std::string(who) + ": fiber anchor u0 has wrong length");
}

}  // namespace

CVector parametrize_tensor(const Format& f, const CVector& u) {
  check_chart_length(f, u, "parametrize_tensor");
  CVector tensor = CVector::Zero(f.ambient_dim());
  const long long block = f.summand_unknowns();
  for (int i = 0; i < f.r; ++i) {
    const auto s = summand_vectors(f, u, i * block);
    for (int ia = 0; ia < f.a; ++ia)
      for (int jb = 0; jb < f.b; ++jb) {
        const Complex ab = s.va(ia) * s.vb(jb);
        const long long base = (1LL * ia * f.b + jb) * f.c;
        for (int kc = 0; kc < f.c; ++kc) tensor(base + kc) += ab * s.vc(kc);
      }
  }
  return tensor;
}

CMatrix tensor_jacobian(const Format& f, const CVector& u) {
  check_chart_length(f, u, "tensor_jacobian");
  CMatrix jac = CMatrix::Zero(f.ambient_dim(), f.chart_unknowns());
  const long long block = f.summand_unknowns();
  for (int i = 0; i < f.r; ++i) {
    const long long offset = i * block;
    const auto s = summand_vectors(f, u, offset);
    // Derivatives in the a-block: direction e_p (x) (b_i,1) (x) c_i.
    for (int p = 0; p + 1 < f.a; ++p) {
      const long long col = offset + p;
      for (int jb = 0; jb < f.b; ++jb) {
        const long long base = (1LL * p * f.b + jb) * f.c;
        for (int kc = 0; kc < f.c; ++kc) jac(base + kc, col) += s.vb(jb) * s.vc(kc);
      }
    }
    // Derivatives in the b-block: (a_i,1) (x) e_p (x) c_i.
    for (int p = 0; p + 1 < f.b; ++p) {
      const long long col = offset + (f.a - 1) + p;
      for (int ia = 0; ia < f.a; ++ia) {
        const long long base = (1LL * ia * f.b + p) * f.c;
        for (int kc = 0; kc < f.c; ++kc) jac(base + kc, col) += s.va(ia) * s.vc(kc);
      }
    }
    // Derivatives in the c-block: (a_i,1) (x) (b_i,1) (x) e_p.
    for (int p = 0; p < f.c; ++p) {
      const long long col = offset + (f.a - 1) + (f.b - 1) + p;
      for (int ia = 0; ia < f.a; ++ia)
        for (int jb = 0; jb < f.b; ++jb)
          jac((1LL * ia * f.b + jb) * f.c + p, col) += s.va(ia) * s.vb(jb);
    }
  }
  return jac;
}

CVector evaluate(const Format& f, const SecantProfile& p, const SliceParams& sp,
                 const CVector& u, const CVector& t) {
  check_system_shapes(f, p, sp, u, t, "evaluate");
  const long long ambient = f.ambient_dim();
  const long long m = sp.H.rows();
  CVector res(ambient + m);
  res.head(ambient) = parametrize_tensor(f, u) - (sp.A * t + sp.B);
  if (m > 0) res.tail(m) = sp.H * (u - sp.u0);
  return res;
}

CMatrix jacobian(const Format& f, const SecantProfile& p, const SliceParams& sp,
                 const CVector& u, const CVector& t) {
  check_system_shapes(f, p, sp, u, t, "jacobian");
  const long long ambient = f.ambient_dim();
  const long long n_u = f.chart_unknowns();
  const long long ell = p.codim;
  const long long m = sp.H.rows();
  CMatrix jac = CMatrix::Zero(ambient + m, n_u + ell);
  jac.topLeftCorner(ambient, n_u) = tensor_jacobian(f, u);
  jac.topRightCorner(ambient, ell) = -sp.A;
  if (m > 0) jac.bottomLeftCorner(m, n_u) = sp.H;
  return jac;
}

SecantProfile secant_dimension(const Format& f, std::uint64_t rng_seed, double rank_rel_tol) {
  int ranks[3];
  for (int vote = 0; vote < 3; ++vote) {
    Rng rng(mix_seed(rng_seed, 0x5D1E0000ull + vote));
    const CVector u = rng.cgaussian_vector(f.chart_unknowns());
    ranks[vote] = numeric_rank(tensor_jacobian(f, u), rank_rel_tol).rank;
  }
  int dim;
  if (ranks[0] == ranks[1] || ranks[0] == ranks[2]) {
    dim = ranks[0];
  } else if (ranks[1] == ranks[2]) {
    dim = ranks[1];
  } else {
    std::ostringstream msg;
    msg << "secant_dimension: three measurements disagree pairwise (" << ranks[0] << ", "
        << ranks[1] << ", " << ranks[2] << ")";
    throw DisagreementError(msg.str());
  }
  SecantProfile profile{f, dim, f.ambient_dim() - dim, f.chart_unknowns() - dim};
  return profile;
}

int generic_border_rank(int a, int b, int c, std::uint64_t rng_seed) {
  const int start = expected_generic_rank(a, b, c);
  auto fills = [&](int r) {
    const Format f(a, b, c, r);
    return secant_dimension(f, mix_seed(rng_seed, 0x6B500000ull + r)).codim == 0;
  };
  int r = start;
  if (fills(r)) {
    while (r > 1 && fills(r - 1)) --r;
    return r;
  }
  while (!fills(r + 1)) ++r;
  return r + 1;
}

std::pair<SliceParams, Solution> seed_witness(const SecantProfile& p, std::uint64_t rng_seed) {
  const Format& f = p.format;
  const long long ell = p.codim;
  if (ell < 1)
    throw std::invalid_argument(
        "seed_witness: the secant fills its ambient space, so there is nothing to slice");
  const long long ambient = f.ambient_dim();
  const long long n_u = f.chart_unknowns();
  const long long m = n_u - p.dim;

  constexpr int kMaxAttempts = 32;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(mix_seed(rng_seed, 0x5EED0000ull + attempt));
    SliceParams sp;
    sp.u0 = rng.cgaussian_vector(n_u);
    sp.A = rng.cgaussian_matrix(ambient, ell);
    sp.H = rng.cgaussian_matrix(m, n_u);
    sp.B = parametrize_tensor(f, sp.u0);

    if (m > 0 && numeric_rank(sp.H).rank < m) continue;

    Solution seed;
    seed.u = sp.u0;
    seed.t = CVector::Zero(ell);
    const CMatrix jac = jacobian(f, p, sp, seed.u, seed.t);
    Eigen::PartialPivLU<CMatrix> lu(jac);
    if (!(lu.rcond() > 1e-10)) continue;

    seed.residual_norm = evaluate(f, p, sp, seed.u, seed.t).norm();
    if (seed.residual_norm > 1e-12) continue;
    return {std::move(sp), std::move(seed)};
  }
  throw SingularSystem("seed_witness: no well-conditioned slice found after repeated draws");
}

}  // namespace rankbound
