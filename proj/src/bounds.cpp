#include "rankbound/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rankbound {

namespace {

// Tail of the Stirling series for ln Gamma(x+1) - (x+1/2) ln x + x
// - ln(2 pi)/2, accurate to ~1e-18 for x >= 40.
double stirling_correction(double x) {
  const double ix = 1.0 / x;
  const double ix2 = ix * ix;
  return ix * (1.0 / 12 + ix2 * (-1.0 / 360 + ix2 * (1.0 / 1260 + ix2 * (-1.0 / 1680))));
}

}  // namespace

double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n)
    throw std::domain_error("log_binomial: need 0 <= k <= n");
  const long long kk = std::min(k, n - k);
  if (kk == 0) return 0.0;

  // Small k: sum of log-ratios, each term positive, no cancellation.
  if (kk <= 40) {
    double acc = 0.0;
    for (long long i = 1; i <= kk; ++i)
      acc += std::log(static_cast<double>(n - kk + i) / static_cast<double>(i));
    return acc;
  }

  // Entropy form of Stirling: every term is positive, so the ~1e9 worth of
  // cancellation in a naive lgamma difference never appears.
  const double N = static_cast<double>(n);
  const double K = static_cast<double>(kk);
  const double M = static_cast<double>(n - kk);
  return K * std::log(N / K) + M * std::log1p(K / M) +
         0.5 * std::log(N / (2.0 * std::numbers::pi * K * M)) + stirling_correction(N) -
         stirling_correction(K) - stirling_correction(M);
}

double asymptotic_bound(long long r, long long dim_L, long long q) {
  if (r < 1 || dim_L < 1 || q < 1)
    throw std::domain_error("asymptotic_bound: need r >= 1, dim_L >= 1, q >= 1");
  return static_cast<double>(r) *
         std::exp(log_binomial(dim_L + q - 1, q) / static_cast<double>(q));
}

long long minimal_q(long long r, long long dim_L, double target) {
  if (r < 1 || dim_L < 1) throw std::domain_error("minimal_q: need r >= 1, dim_L >= 1");
  if (!(target > static_cast<double>(r))) {
    std::ostringstream msg;
    msg << "minimal_q: target " << target << " is not above r = " << r
        << "; the bound approaches r from above and can never reach it";
    throw NoImprovement(msg.str());
  }
  if (asymptotic_bound(r, dim_L, 1) < target) return 1;

  // Invariant: bound(lo) >= target. The bound is strictly decreasing in q
  // (for dim_L >= 2; dim_L = 1 returns from the check above), so doubling
  // finds a bracket and bisection isolates the crossing.
  long long lo = 1;
  long long hi = 2;
  while (asymptotic_bound(r, dim_L, hi) >= target) {
    lo = hi;
    hi *= 2;
    if (hi > (1LL << 50))
      throw std::domain_error("minimal_q: no q below 2^50 meets the target");
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (asymptotic_bound(r, dim_L, mid) < target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

BoundResult bound_from_witness(const WitnessSet& ws,
                               const std::optional<InterpolationVerdict>& verdict,
                               double residual_tol) {
  for (std::size_t i = 0; i < ws.solutions.size(); ++i) {
    if (!(ws.solutions[i].residual_norm <= residual_tol)) {
      std::ostringstream msg;
      msg << "bound_from_witness: solution " << i << " has residual "
          << ws.solutions[i].residual_norm << " above " << residual_tol;
      throw std::invalid_argument(msg.str());
    }
  }

  BoundResult result;
  result.r = ws.profile.format.r;
  result.dim_L = ws.profile.codim + 1;

  if (ws.profile.codim == 1) {
    // On a pencil the witness count is the root count of the defining
    // polynomial restricted to the slice line, so the degree is certified
    // directly.
    const long long n_points = static_cast<long long>(ws.solutions.size());
    if (n_points < 2)
      throw std::invalid_argument(
          "bound_from_witness: a hypersurface witness needs at least two points");
    result.q = n_points - 1;
    result.certificate = "root-count";
  } else {
    if (!verdict || !verdict->full_rank)
      throw MissingCertificate(
          "bound_from_witness: witnesses of codimension above 1 need a full-rank "
          "interpolation verdict for the claimed degree");
    result.q = verdict->q;
    result.certificate = "interpolation";
  }
  result.value = asymptotic_bound(result.r, result.dim_L, result.q);
  return result;
}

}  // namespace rankbound
