#include "rankbound/tracker.hpp"

#include <algorithm>
#include <cmath>

namespace rankbound {

const char* to_string(TrackStatus s) {
  switch (s) {
    case TrackStatus::Success: return "Success";
    case TrackStatus::StepSizeCollapse: return "StepSizeCollapse";
    case TrackStatus::MaxStepsExceeded: return "MaxStepsExceeded";
    case TrackStatus::Diverged: return "Diverged";
  }
  return "Unknown";
}

namespace {

void validate_config(const TrackerConfig& cfg) {
  if (!(cfg.initial_step > 0.0) || !(cfg.min_step > 0.0) || cfg.min_step > cfg.initial_step)
    throw std::invalid_argument("track: step sizes must satisfy 0 < min_step <= initial_step");
  if (cfg.max_steps < 1 || cfg.max_newton_iters < 1 || cfg.expand_after < 1)
    throw std::invalid_argument("track: iteration limits must be positive");
  if (!(cfg.step_expand > 1.0) || !(cfg.step_contract > 0.0) || !(cfg.step_contract < 1.0))
    throw std::invalid_argument("track: step factors must satisfy contract in (0,1), expand > 1");
}

struct PackedPoint {
  CVector x;  // (u, t) concatenated

  CVector u(long long n_u) const { return x.head(n_u); }
  CVector t(long long n_u) const { return x.tail(x.size() - n_u); }
};

// The homotopy between two slice systems sharing H and u0, reparametrized by
// tau(s) = gamma*s / (1 + (gamma-1)*s) so the connecting path leaves the real
// segment between the endpoint parameters.
class SegmentHomotopy {
 public:
  SegmentHomotopy(const Format& f, const SecantProfile& p, const SliceParams& from,
                  const SliceParams& to, Complex gamma)
      : f_(f), p_(p), from_(from), gamma_(gamma), dA_(to.A - from.A), dB_(to.B - from.B) {
    work_ = from;
  }

  Complex tau(double s) const { return gamma_ * s / (1.0 + (gamma_ - 1.0) * s); }

  Complex dtau(double s) const {
    const Complex den = 1.0 + (gamma_ - 1.0) * s;
    return gamma_ / (den * den);
  }

  const SliceParams& params_at(Complex tau_value) {
    work_.A = from_.A + tau_value * dA_;
    work_.B = from_.B + tau_value * dB_;
    return work_;
  }

  CVector residual(const PackedPoint& pt, Complex tau_value) {
    const auto& sp = params_at(tau_value);
    return evaluate(f_, p_, sp, pt.u(n_u()), pt.t(n_u()));
  }

  CMatrix system_jacobian(const PackedPoint& pt, Complex tau_value) {
    const auto& sp = params_at(tau_value);
    return jacobian(f_, p_, sp, pt.u(n_u()), pt.t(n_u()));
  }

  // dF/ds at (x, s): only the tensor block depends on the parameters.
  CVector parameter_velocity(const PackedPoint& pt, double s) const {
    CVector v = CVector::Zero(residual_size());
    v.head(f_.ambient_dim()) = -(dA_ * pt.t(n_u()) + dB_) * dtau(s);
    return v;
  }

  long long n_u() const { return f_.chart_unknowns(); }
  long long residual_size() const { return f_.ambient_dim() + from_.H.rows(); }

 private:
  const Format& f_;
  const SecantProfile& p_;
  const SliceParams& from_;
  Complex gamma_;
  CMatrix dA_;
  CVector dB_;
  SliceParams work_;
};

// One Newton correction pass against the system at fixed parameters sp.
// Returns true when the residual target was met; pt is updated in place on
// success and left unspecified on failure.
bool correct(const Format& f, const SecantProfile& p, const SliceParams& sp, PackedPoint& pt,
             const TrackerConfig& cfg, const Tolerances& solve_tol) {
  const long long n_u = f.chart_unknowns();
  CVector res = evaluate(f, p, sp, pt.u(n_u), pt.t(n_u));
  for (int iter = 0; iter <= cfg.max_newton_iters; ++iter) {
    if (!res.allFinite()) return false;
    if (res.norm() <= cfg.corrector_tol) return true;
    if (iter == cfg.max_newton_iters) return false;
    const CMatrix jac = jacobian(f, p, sp, pt.u(n_u), pt.t(n_u));
    try {
      pt.x -= linear_solve(jac, res, solve_tol);
    } catch (const SingularSystem&) {
      return false;
    }
    if (!pt.x.allFinite()) return false;
    res = evaluate(f, p, sp, pt.u(n_u), pt.t(n_u));
  }
  return false;
}

}  // namespace

Solution newton_refine(const Format& f, const SecantProfile& p, const SliceParams& sp,
                       const Solution& sol, double tol, int max_iters) {
  const long long n_u = f.chart_unknowns();
  PackedPoint pt;
  pt.x.resize(sol.u.size() + sol.t.size());
  pt.x << sol.u, sol.t;

  CVector res = evaluate(f, p, sp, sol.u, sol.t);
  for (int iter = 0; iter <= max_iters; ++iter) {
    const double rnorm = res.norm();
    if (res.allFinite() && rnorm <= tol)
      return Solution{pt.u(n_u), pt.t(n_u), rnorm};
    if (iter == max_iters) break;
    const CMatrix jac = jacobian(f, p, sp, pt.u(n_u), pt.t(n_u));
    pt.x -= linear_solve(jac, res);
    res = evaluate(f, p, sp, pt.u(n_u), pt.t(n_u));
  }
  throw NoConvergence("newton_refine: residual target not reached within the iteration limit");
}

TrackOutcome track(const Format& f, const SecantProfile& p, const Solution& sol,
                   const SliceParams& from, const SliceParams& to, const TrackerConfig& cfg,
                   Complex gamma) {
  validate_config(cfg);
  if (from.H.rows() != to.H.rows() || from.H.cols() != to.H.cols() ||
      (from.H - to.H).norm() != 0.0 || from.u0.size() != to.u0.size() ||
      (from.u0 - to.u0).norm() != 0.0)
    throw std::invalid_argument("track: endpoints must share the fiber slice (H, u0)");
  if (from.A.rows() != to.A.rows() || from.A.cols() != to.A.cols() ||
      from.B.size() != to.B.size())
    throw std::invalid_argument("track: endpoint slice shapes differ");

  SegmentHomotopy hom(f, p, from, to, gamma);
  const long long n_u = f.chart_unknowns();
  const Tolerances solve_tol{};

  PackedPoint pt;
  pt.x.resize(sol.u.size() + sol.t.size());
  pt.x << sol.u, sol.t;

  double s = 0.0;
  double step = cfg.initial_step;
  int steps_used = 0;
  int accepts_in_row = 0;

  // RK4 on x'(s) = -J(x, s)^{-1} dF/ds(x, s).
  auto slope = [&](const CVector& x, double at_s, CVector& out) {
    PackedPoint probe{x};
    const CMatrix jac = hom.system_jacobian(probe, hom.tau(at_s));
    out = -linear_solve(jac, hom.parameter_velocity(probe, at_s), solve_tol);
  };

  while (s < 1.0 - 1e-14) {
    if (steps_used >= cfg.max_steps) return {TrackStatus::MaxStepsExceeded, {}, steps_used};
    ++steps_used;
    const double h = std::min(step, 1.0 - s);
    const bool lands_on_target = (s + h >= 1.0 - 1e-14);

    bool accepted = false;
    PackedPoint trial = pt;
    try {
      CVector k1, k2, k3, k4;
      slope(pt.x, s, k1);
      slope(pt.x + (h / 2) * k1, s + h / 2, k2);
      slope(pt.x + (h / 2) * k2, s + h / 2, k3);
      slope(pt.x + h * k3, s + h, k4);
      trial.x = pt.x + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (trial.x.allFinite()) {
        // The last step corrects against the exact target parameters, so a
        // Success endpoint satisfies `to` itself, not a rounded tau(1).
        const SliceParams& sp =
            lands_on_target ? to : hom.params_at(hom.tau(s + h));
        accepted = correct(f, p, sp, trial, cfg, solve_tol);
      }
    } catch (const SingularSystem&) {
      accepted = false;
    }

    if (accepted) {
      pt = trial;
      s += h;
      if (!(pt.x.norm() <= cfg.divergence_norm))
        return {TrackStatus::Diverged, {}, steps_used};
      if (++accepts_in_row >= cfg.expand_after) {
        step = std::min(step * cfg.step_expand, 1.0);
        accepts_in_row = 0;
      }
    } else {
      accepts_in_row = 0;
      step *= cfg.step_contract;
      if (step < cfg.min_step) return {TrackStatus::StepSizeCollapse, {}, steps_used};
    }
  }

  Solution end{pt.u(n_u), pt.t(n_u), 0.0};
  end.residual_norm = evaluate(f, p, to, end.u, end.t).norm();
  return {TrackStatus::Success, std::move(end), steps_used};
}

}  // namespace rankbound
