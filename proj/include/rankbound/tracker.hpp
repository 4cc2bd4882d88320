#pragma once

#include "rankbound/segre_system.hpp"

namespace rankbound {

/// Thrown by newton_refine when the residual target is not reached.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrackerConfig {
  double initial_step = 0.1;
  double min_step = 1e-7;        // below this the path is abandoned
  int max_steps = 10000;         // attempted steps, accepted or not
  double corrector_tol = 1e-10;  // Newton residual target at each step
  int max_newton_iters = 5;
  double step_expand = 2.0;      // growth after expand_after consecutive accepts
  double step_contract = 0.5;    // shrink after a rejected step
  int expand_after = 3;
  double divergence_norm = 1e8;  // |(u,t)| beyond this declares divergence
};

enum class TrackStatus { Success, StepSizeCollapse, MaxStepsExceeded, Diverged };

const char* to_string(TrackStatus s);

struct TrackOutcome {
  TrackStatus status = TrackStatus::Diverged;
  Solution solution;  // meaningful only when status == Success
  int steps_used = 0;
};

/// Newton's method on the square system at fixed slice parameters. Returns
/// the refined solution once its residual is <= tol (an input already at
/// tolerance comes back after zero iterations); throws NoConvergence after
/// max_iters without reaching it and propagates SingularSystem from the
/// linear solves.
Solution newton_refine(const Format& f, const SecantProfile& p, const SliceParams& sp,
                       const Solution& sol, double tol, int max_iters);

/// Tracks sol from the system at `from` to the system at `to` along the
/// segment reparametrized through the complex step gamma (which moves the
/// path off the real discriminant locus). Only A and B may differ between
/// the endpoints; H and u0 must be identical. Predictor: fourth-order
/// Runge-Kutta on the induced ODE; corrector: Newton at the stepped
/// parameter. Step size halves on rejection and grows after consecutive
/// accepts. The final step corrects against `to` exactly, so a Success
/// endpoint satisfies the target system to corrector_tol.
TrackOutcome track(const Format& f, const SecantProfile& p, const Solution& sol,
                   const SliceParams& from, const SliceParams& to,
                   const TrackerConfig& cfg, Complex gamma);

}  // namespace rankbound
