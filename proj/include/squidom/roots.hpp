#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "squidom/errors.hpp"

namespace squidom {

/// Principal-branch root of x tan(x) = r for r > 0, with x in (0, pi/2).
///
/// Bracketed bisection on (0, pi/2 - 1e-9) followed by Newton polish. Newton
/// runs on g(x) = x sin x - r cos x, which has the same root and no pole.
template <typename Real>
Real solve_x_tan_x(Real r) {
  using std::cos;
  using std::sin;
  using std::tan;
  if (!(r > Real(0))) throw domain_error("x tan x = r requires r > 0");

  const Real upper = std::numbers::pi_v<Real> / Real(2) - Real(1e-9);
  if (upper * tan(upper) <= r)
    throw domain_error("x tan x = r: r beyond the representable branch");

  auto f = [r](Real x) { return x * sin(x) - r * cos(x); };
  Real lo = Real(0);
  Real hi = upper;
  // f(0) = -r < 0 and f(upper) > 0
  for (int i = 0; i < 60; ++i) {
    Real mid = (lo + hi) / Real(2);
    if (f(mid) < Real(0))
      lo = mid;
    else
      hi = mid;
  }

  Real x = (lo + hi) / Real(2);
  for (int i = 0; i < 8; ++i) {
    Real fx = f(x);
    Real dfx = sin(x) + x * cos(x) + r * sin(x);
    Real step = fx / dfx;
    Real next = x - step;
    if (next <= Real(0) || next >= upper) break;
    x = next;
    if (std::abs(step) <= std::numeric_limits<Real>::epsilon() * x) break;
  }
  return x;
}

}  // namespace squidom
