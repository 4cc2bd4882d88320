#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rankbound/rng.hpp"
#include "rankbound/tracker.hpp"

namespace rankbound {

/// Thrown when a tracking step that the caller requires cannot be completed.
class TrackFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WitnessMeta {
  std::uint64_t rng_seed = 0;
  long long loops_run = 0;
  long long paths_failed = 0;
  long long stall_counter = 0;  // consecutive loops with no new point
  std::optional<long long> target_count;
  std::string stop_reason;          // "target", "stall", "max_loops", "seed_track_failure"
  long long fiber_collisions = 0;   // merges of points sharing t but not u
};

/// A witness set for the slice of one secant variety: the slice data, the
/// solutions found so far, and enough bookkeeping to resume the search.
struct WitnessSet {
  SecantProfile profile;
  SliceParams params;
  std::vector<Solution> solutions;
  WitnessMeta meta;
};

/// Removes duplicates, keeping first occurrences. Two solutions coincide
/// when |t1 - t2| <= tol * (1 + |t1|); the slice coordinate t determines the
/// image point, which is what a witness counts.
std::vector<Solution> dedupe(const std::vector<Solution>& sols, double tol = 1e-6);

/// Appends sol to ws.solutions unless it duplicates a stored point. A
/// duplicate whose chart coordinates differ markedly is counted in
/// meta.fiber_collisions (distinct preimages of one image point). Returns
/// true when the point was new.
bool merge_point(WitnessSet& ws, const Solution& sol, double tol = 1e-6);

struct LoopStats {
  long long new_points = 0;
  long long failures = 0;
};

/// Runs one monodromy loop: a triangle from the base slice through two fresh
/// random slices and back, tracking every stored solution (in parallel; see
/// parallel.hpp) and merging the survivors in index order so results do not
/// depend on thread count. Increments meta.loops_run and meta.paths_failed.
LoopStats loop_once(WitnessSet& ws, const TrackerConfig& cfg, Rng& rng);

struct StopRule {
  long long stall_limit = 10;  // stop after this many loops without progress
  long long max_loops = 200;
  std::optional<long long> target_count;  // stop once this many points are known
};

using LoopCallback = std::function<void(const WitnessSet&)>;

/// Iterates loop_once until the stop rule fires, invoking after_loop (when
/// set) after every loop, e.g. to write checkpoints. Per-loop randomness is
/// derived from (meta.rng_seed, meta.loops_run), so a resumed run continues
/// the exact sequence a longer run would have used. Sets meta.stop_reason;
/// "seed_track_failure" records that no path of any loop ever tracked.
WitnessSet run(WitnessSet ws, const TrackerConfig& cfg, const StopRule& stop,
               const LoopCallback& after_loop = {});

struct TraceReport {
  bool passed = false;
  double trace_residual = 0.0;          // norm of the second difference
  double first_difference_scale = 0.0;  // norm of the first difference
};

/// Completeness test for hypersurface witnesses (codim 1 only): translates
/// the slice by 0, eps, 2*eps of a random direction, tracks every point to
/// the translates, and checks that the sum of image points moves affine-
/// linearly (second difference small relative to the first). Throws
/// TrackFailure if any path fails and std::invalid_argument when codim != 1.
TraceReport trace_test(const WitnessSet& ws, const TrackerConfig& cfg);

}  // namespace rankbound
