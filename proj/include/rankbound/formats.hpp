#pragma once

#include <stdexcept>

namespace rankbound {

/// A tensor format (a, b, c) together with the secant index r under study.
/// Sides are normalized so that a <= b <= c; the varieties involved are
/// invariant under permuting the factors, so the normalized triple is
/// canonical.
struct Format {
  int a = 1;
  int b = 1;
  int c = 1;
  int r = 1;

  Format() = default;
  Format(int a_, int b_, int c_, int r_);

  /// Dimension a*b*c of the ambient tensor space.
  long long ambient_dim() const { return 1LL * a * b * c; }

  /// Unknowns contributed by one rank-one summand in the affine chart
  /// (a_i, 1) (x) (b_i, 1) (x) c_i.
  long long summand_unknowns() const { return a + b + c - 2; }

  /// Total chart unknowns n_u = r * (a + b + c - 2).
  long long chart_unknowns() const { return r * summand_unknowns(); }
};

/// True when a generic tensor of this format uses all three factors fully,
/// i.e. no side exceeds the product of the other two. Sides may be given in
/// any order. Throws std::invalid_argument for non-positive sides.
bool is_concise(int a, int b, int c);

/// Dimension-count heuristic ceil(abc / (a+b+c-2)) for the smallest r whose
/// r-th secant fills the ambient space. Exact for most formats but not all;
/// the authoritative value is measured numerically (see segre_system).
int expected_generic_rank(int a, int b, int c);

struct SystemShape {
  long long n_vars = 0;    // chart unknowns plus slice coordinates
  long long n_eqs = 0;     // tensor equations plus fiber slices
  long long n_params = 0;  // entries of the slice pair (A, B)
  long long fiber_dim = 0; // number m of fiber slices
};

/// Shape of the square slicing system for a secant variety of codimension
/// ell. Rejects ell <= 0 (a filling secant admits no slice) and any pair
/// where the fiber slice count m = n_u + ell - abc would be negative.
SystemShape system_shape(const Format& f, long long ell);

}  // namespace rankbound
