#include "rankbound/monodromy.hpp"

#include <array>
#include <cmath>

#include "rankbound/parallel.hpp"

namespace rankbound {

namespace {

bool same_image_point(const CVector& t_stored, const CVector& t_candidate, double tol) {
  return (t_stored - t_candidate).norm() <= tol * (1.0 + t_stored.norm());
}

// A unit complex number kept away from -1, where the reparametrized segment
// would pass close to the midpoint singularity it is meant to avoid.
Complex draw_gamma(Rng& rng) {
  for (;;) {
    const Complex g = rng.unit_complex();
    if (std::abs(g + Complex(1.0, 0.0)) > 1e-2) return g;
  }
}

}  // namespace

std::vector<Solution> dedupe(const std::vector<Solution>& sols, double tol) {
  std::vector<Solution> kept;
  kept.reserve(sols.size());
  for (const auto& sol : sols) {
    bool duplicate = false;
    for (const auto& have : kept) {
      if (same_image_point(have.t, sol.t, tol)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(sol);
  }
  return kept;
}

bool merge_point(WitnessSet& ws, const Solution& sol, double tol) {
  for (const auto& have : ws.solutions) {
    if (same_image_point(have.t, sol.t, tol)) {
      if ((have.u - sol.u).norm() > 1e-3 * (1.0 + have.u.norm())) ++ws.meta.fiber_collisions;
      return false;
    }
  }
  ws.solutions.push_back(sol);
  return true;
}

LoopStats loop_once(WitnessSet& ws, const TrackerConfig& cfg, Rng& rng) {
  if (ws.solutions.empty())
    throw std::invalid_argument("loop_once: witness set has no solutions to move");
  const Format& f = ws.profile.format;
  const long long ambient = f.ambient_dim();
  const long long ell = ws.profile.codim;

  // Triangle vertices: the base slice and two fresh random slices. All
  // randomness is drawn up front, single-threaded, in a fixed order, so the
  // tracking phase can run on any number of threads.
  SliceParams vertex1 = ws.params;
  vertex1.A = rng.cgaussian_matrix(ambient, ell);
  vertex1.B = rng.cgaussian_vector(ambient);
  SliceParams vertex2 = ws.params;
  vertex2.A = rng.cgaussian_matrix(ambient, ell);
  vertex2.B = rng.cgaussian_vector(ambient);

  const int n_paths = static_cast<int>(ws.solutions.size());
  std::vector<std::array<Complex, 3>> gammas(n_paths);
  for (auto& per_path : gammas)
    for (auto& g : per_path) g = draw_gamma(rng);

  const std::array<const SliceParams*, 4> corners{&ws.params, &vertex1, &vertex2, &ws.params};
  std::vector<std::optional<Solution>> endpoints(n_paths);
  parallel_for(n_paths, [&](int i) {
    Solution current = ws.solutions[i];
    for (int leg = 0; leg < 3; ++leg) {
      TrackOutcome outcome =
          track(f, ws.profile, current, *corners[leg], *corners[leg + 1], cfg, gammas[i][leg]);
      if (outcome.status != TrackStatus::Success) return;
      current = std::move(outcome.solution);
    }
    try {
      endpoints[i] =
          newton_refine(f, ws.profile, ws.params, current, cfg.corrector_tol, cfg.max_newton_iters);
    } catch (const std::exception&) {
      // fall through: counted as a failed path
    }
  });

  LoopStats stats;
  for (int i = 0; i < n_paths; ++i) {
    if (!endpoints[i]) {
      ++stats.failures;
      continue;
    }
    if (merge_point(ws, *endpoints[i], Tolerances{}.dedupe_tol)) ++stats.new_points;
  }
  ++ws.meta.loops_run;
  ws.meta.paths_failed += stats.failures;
  return stats;
}

WitnessSet run(WitnessSet ws, const TrackerConfig& cfg, const StopRule& stop,
               const LoopCallback& after_loop) {
  if (ws.solutions.empty())
    throw std::invalid_argument("run: witness set has no solutions to move");
  ws.meta.target_count = stop.target_count;
  ws.meta.stop_reason.clear();
  long long successes_this_run = 0;
  long long loops_this_run = 0;

  for (;;) {
    if (stop.target_count &&
        static_cast<long long>(ws.solutions.size()) >= *stop.target_count) {
      ws.meta.stop_reason = "target";
      break;
    }
    if (ws.meta.stall_counter >= stop.stall_limit) {
      ws.meta.stop_reason = "stall";
      break;
    }
    if (ws.meta.loops_run >= stop.max_loops) {
      ws.meta.stop_reason = "max_loops";
      break;
    }

    const long long attempted = static_cast<long long>(ws.solutions.size());
    Rng rng(mix_seed(ws.meta.rng_seed, 0x100D0000ull + ws.meta.loops_run));
    const LoopStats stats = loop_once(ws, cfg, rng);
    ++loops_this_run;
    successes_this_run += attempted - stats.failures;
    ws.meta.stall_counter = (stats.new_points == 0) ? ws.meta.stall_counter + 1 : 0;
    if (after_loop) after_loop(ws);
  }

  if (loops_this_run > 0 && successes_this_run == 0)
    ws.meta.stop_reason = "seed_track_failure";
  return ws;
}

TraceReport trace_test(const WitnessSet& ws, const TrackerConfig& cfg) {
  if (ws.profile.codim != 1)
    throw std::invalid_argument("trace_test: only hypersurface witnesses (codim 1) are testable");
  if (ws.solutions.empty())
    throw std::invalid_argument("trace_test: witness set has no solutions");

  const Format& f = ws.profile.format;
  const long long ambient = f.ambient_dim();
  const int n = static_cast<int>(ws.solutions.size());
  constexpr double kEps = 1e-2;

  Rng rng(mix_seed(ws.meta.rng_seed, 0x7ACE0000ull));
  CVector direction = rng.cgaussian_vector(ambient);
  direction /= direction.norm();

  // Gammas for all paths of both translates, drawn in fixed order.
  std::vector<Complex> gammas(2 * n);
  for (auto& g : gammas) g = draw_gamma(rng);

  std::array<SliceParams, 3> translates{ws.params, ws.params, ws.params};
  translates[1].B += kEps * direction;
  translates[2].B += 2.0 * kEps * direction;

  // sums[k] accumulates the image points sum_i (A t_i + B_k) on translate k.
  std::array<CVector, 3> sums;
  sums[0] = CVector::Zero(ambient);
  for (const auto& sol : ws.solutions) sums[0] += ws.params.A * sol.t + ws.params.B;

  for (int k = 1; k <= 2; ++k) {
    std::vector<std::optional<Solution>> moved(n);
    parallel_for(n, [&](int i) {
      TrackOutcome outcome = track(f, ws.profile, ws.solutions[i], ws.params, translates[k],
                                   cfg, gammas[(k - 1) * n + i]);
      if (outcome.status == TrackStatus::Success) moved[i] = std::move(outcome.solution);
    });
    sums[k] = CVector::Zero(ambient);
    for (int i = 0; i < n; ++i) {
      if (!moved[i])
        throw TrackFailure("trace_test: a path failed to reach the translated slice");
      sums[k] += translates[k].A * moved[i]->t + translates[k].B;
    }
  }

  const CVector first_diff = sums[1] - sums[0];
  const CVector second_diff = sums[2] - 2.0 * sums[1] + sums[0];
  TraceReport report;
  report.first_difference_scale = first_diff.norm();
  report.trace_residual = second_diff.norm();
  report.passed = report.trace_residual <= 1e-4 * report.first_difference_scale;
  return report;
}

}  // namespace rankbound
