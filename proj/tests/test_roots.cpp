#include <doctest.h>

#include <cmath>

#include "squidom/errors.hpp"
#include "squidom/roots.hpp"

using squidom::solve_x_tan_x;

namespace {

// plain bisection on x tan x - r over (0, pi/2), long double
long double bisect(long double r) {
  long double lo = 0, hi = 1.5707963267948966L - 1e-15L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (mid * std::tan(mid) < r)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5L * (lo + hi);
}

}  // namespace

TEST_CASE("x tan x roots match reference values") {
  // reference roots from a 30-digit solve
  const double table[][2] = {{0.01, 0.09983363855112635},
                             {0.1, 0.31105284820029773},
                             {0.276, 0.50237503481421676},
                             {1.0, 0.86033358901937976},
                             {5.0, 1.3138377164928983}};
  for (const auto& [r, x] : table) {
    const double got = solve_x_tan_x(r);
    CHECK(got == doctest::Approx(x).epsilon(1e-13));
    CHECK(std::abs(got * std::tan(got) - r) < 1e-12);
    CHECK(std::abs(got - static_cast<double>(bisect(r))) < 1e-12);
  }
}

TEST_CASE("x tan x small-argument limit") {
  for (double r : {1e-8, 1e-6, 1e-4}) CHECK(solve_x_tan_x(r) == doctest::Approx(std::sqrt(r)).epsilon(1e-3));
}

TEST_CASE("x tan x domain") {
  CHECK_THROWS_AS(solve_x_tan_x(0.0), squidom::domain_error);
  CHECK_THROWS_AS(solve_x_tan_x(-1.0), squidom::domain_error);
}

TEST_CASE("x tan x is monotone in r") {
  double prev = 0.0;
  for (double r = 0.05; r < 50.0; r *= 1.3) {
    const double x = solve_x_tan_x(r);
    CHECK(x > prev);
    CHECK(x < M_PI / 2);
    prev = x;
  }
}

TEST_CASE("long double instantiation") {
  const long double x = solve_x_tan_x<long double>(1.0L);
  CHECK(std::abs(static_cast<double>(x) - 0.86033358901937976) < 1e-14);
}
