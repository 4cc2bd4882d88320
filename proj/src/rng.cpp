#include "rankbound/rng.hpp"

#include <cmath>
#include <numbers>

namespace rankbound {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return finalize(seed ^ finalize(stream + kGolden));
}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return finalize(state_);
}

double Rng::uniform01() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

Complex Rng::unit_complex() {
  const double angle = 2.0 * std::numbers::pi * uniform01();
  return {std::cos(angle), std::sin(angle)};
}

CVector Rng::cgaussian_vector(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cgaussian();
  return v;
}

CMatrix Rng::cgaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cgaussian();
  return m;
}

}  // namespace rankbound
