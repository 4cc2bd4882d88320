#pragma once

#include <cstdint>

#include "rankbound/numerics.hpp"

namespace rankbound {

/// Derives a decorrelated child seed from (seed, stream). Used everywhere a
/// reproducible sub-stream is needed (per-vote, per-loop, per-path draws), so
/// that resumed or re-threaded runs replay the exact same randomness.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic pseudo-random generator with explicit bit-level algorithms
/// (splitmix64 core, Box-Muller normals). The standard library distributions
/// are implementation-defined, so they cannot provide the byte-for-byte
/// reproducibility across platforms that seeded runs promise.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in the half-open interval (0, 1]; never returns 0, so logs are safe.
  double uniform01();

  /// Standard normal via Box-Muller (the spare value is cached).
  double gaussian();

  /// Complex with independent standard-normal real and imaginary parts.
  Complex cgaussian();

  /// Uniformly distributed point on the unit circle.
  Complex unit_complex();

  CVector cgaussian_vector(Eigen::Index n);

  /// Filled row-major so the draw order is well-defined.
  CMatrix cgaussian_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rankbound
