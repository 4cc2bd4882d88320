#pragma once

#include <optional>
#include <string>

#include "rankbound/interpolation.hpp"
#include "rankbound/monodromy.hpp"

namespace rankbound {

/// Thrown when the requested bound target is not an improvement over r.
class NoImprovement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a witness lacks the interpolation certificate its
/// codimension requires.
class MissingCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ln C(n, k) to near machine precision (relative error around 1e-14):
/// a direct logarithm sum for small min(k, n-k), a cancellation-free
/// entropy-form Stirling expansion otherwise.
double log_binomial(long long n, long long k);

/// The asymptotic rank bound r * C(dim_L + q - 1, q)^(1/q), evaluated in the
/// log domain. Strictly decreasing in q for dim_L >= 2 with limit r.
/// Requires r >= 1, dim_L >= 1, q >= 1.
double asymptotic_bound(long long r, long long dim_L, long long q);

/// Smallest q >= 1 with asymptotic_bound(r, dim_L, q) < target, located by
/// doubling then binary search. Throws NoImprovement when target <= r (the
/// bound can never get below r).
long long minimal_q(long long r, long long dim_L, double target);

struct BoundResult {
  long long r = 0;
  long long dim_L = 0;
  long long q = 0;
  double value = 0.0;
  std::string certificate;  // "root-count" (codim 1) or "interpolation"
};

/// Bound extracted from a witness set. For a hypersurface witness (codim 1)
/// the certified degree is the root count: q = #points - 1, dim_L = 2.
/// Higher codimension requires a full-rank interpolation verdict, which
/// certifies q = verdict.q with dim_L = codim + 1. Callers decide whether
/// the value improves on reference ranks. Rejects witnesses whose stored
/// residuals exceed residual_tol.
BoundResult bound_from_witness(const WitnessSet& ws,
                               const std::optional<InterpolationVerdict>& verdict = {},
                               double residual_tol = 1e-8);

}  // namespace rankbound
