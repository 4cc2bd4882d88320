#include "rankbound/formats.hpp"

#include <algorithm>
#include <array>

namespace rankbound {

namespace {

std::array<int, 3> sorted_sides(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1)
    throw std::invalid_argument("format sides must be positive");
  std::array<int, 3> s{a, b, c};
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

Format::Format(int a_, int b_, int c_, int r_) {
  const auto s = sorted_sides(a_, b_, c_);
  if (r_ < 1) throw std::invalid_argument("secant index must be positive");
  a = s[0];
  b = s[1];
  c = s[2];
  r = r_;
}

bool is_concise(int a, int b, int c) {
  const auto s = sorted_sides(a, b, c);
  return static_cast<long long>(s[2]) <= 1LL * s[0] * s[1];
}

int expected_generic_rank(int a, int b, int c) {
  const auto s = sorted_sides(a, b, c);
  const long long ambient = 1LL * s[0] * s[1] * s[2];
  const long long per_summand = s[0] + s[1] + s[2] - 2;
  return static_cast<int>((ambient + per_summand - 1) / per_summand);
}

SystemShape system_shape(const Format& f, long long ell) {
  if (ell < 1)
    throw std::invalid_argument(
        "slice codimension must be at least 1 (a filling secant admits no slice)");
  const long long ambient = f.ambient_dim();
  const long long n_u = f.chart_unknowns();
  const long long m = n_u + ell - ambient;
  if (m < 0)
    throw std::invalid_argument(
        "negative fiber slice count: the chart has fewer unknowns than the slice "
        "system needs");
  SystemShape shape;
  shape.n_vars = n_u + ell;
  shape.n_eqs = ambient + m;
  shape.n_params = ambient * (ell + 1);
  shape.fiber_dim = m;
  return shape;
}

}  // namespace rankbound
