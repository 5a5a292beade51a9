#include <doctest.h>

#include <cmath>
#include <numbers>

#include "squidom/observables.hpp"

using namespace squidom;
using std::numbers::pi;

TEST_CASE("photon statistics of standard states") {
  const auto coh = coherent_state(50, cplx(1.1, 0.4));
  CHECK(g2_zero(coh, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fano(coh, 0) == doctest::Approx(1.0).epsilon(1e-10));
  const auto th = thermal_state(120, 0.7);
  CHECK(g2_zero(th, 0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(fano(th, 0) == doctest::Approx(1.7).epsilon(1e-8));
  for (int n = 1; n < 5; ++n) {
    const auto f = basis_state(HilbertDims{6}, {n});
    CHECK(g2_zero(f, 0) == doctest::Approx(1.0 - 1.0 / n));
    CHECK(fano(f, 0) == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(g2_zero(basis_state(HilbertDims{4}, {0}), 0), absent_photons_error);
  CHECK_THROWS_AS(fano(basis_state(HilbertDims{4}, {0}), 0), absent_photons_error);
  const auto joint = product_state({basis_state(HilbertDims{3}, {0}), coh});
  CHECK(g2_zero(joint, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mean_number(joint, 1) == doctest::Approx(1.37).epsilon(1e-10));
}

TEST_CASE("Wigner function of Gaussian states") {
  const auto vac = basis_state(HilbertDims{10}, {0});
  CHECK(wigner_at(vac, 0, 0) == doctest::Approx(1 / pi).epsilon(1e-12));
  CHECK(wigner_at(vac, 1.0, -0.5) == doctest::Approx(std::exp(-1.25) / pi).epsilon(1e-12));

  const cplx amp(0.8, -0.6);
  const auto coh = coherent_state(40, amp);
  const double x0 = std::sqrt(2.0) * amp.real(), p0 = std::sqrt(2.0) * amp.imag();
  for (double x : {-1.0, 0.0, 1.3})
    for (double p : {-1.2, 0.4})
      CHECK(wigner_at(coh, x, p) ==
            doctest::Approx(std::exp(-(x - x0) * (x - x0) - (p - p0) * (p - p0)) / pi).epsilon(1e-10));

  const double n = 0.5;
  const auto th = thermal_state(60, n);
  for (double x : {0.0, 0.7, 2.0})
    CHECK(wigner_at(th, x, 0.3) ==
          doctest::Approx(std::exp(-(x * x + 0.09) / (2 * n + 1)) / (pi * (2 * n + 1))).epsilon(1e-9));
}

TEST_CASE("Wigner negativity of a single photon") {
  const auto one = basis_state(HilbertDims{5}, {1});
  CHECK(wigner_at(one, 0, 0) == doctest::Approx(-1 / pi).epsilon(1e-12));
  // W_1 = (2 r^2 - 1) exp(-r^2) / pi
  CHECK(wigner_at(one, 1.0, 1.0) == doctest::Approx(3 * std::exp(-2.0) / pi).epsilon(1e-12));
}

TEST_CASE("grid evaluation and coverage") {
  const auto joint = product_state({coherent_state(20, 0.5), thermal_state(3, 0.2)});
  const auto w = wigner(joint, 0, {-6, 6, 121, -6, 6, 121});
  CHECK(w.coverage_ok);
  CHECK(w.integral == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(w.max_series_error < 1e-8);
  const auto narrow = wigner(joint, 0, {-0.5, 0.5, 11, -0.5, 0.5, 11});
  CHECK(!narrow.coverage_ok);
  CHECK(!narrow.warning.empty());
  CHECK_THROWS_AS(wigner(basis_state(HilbertDims{61}, {0}), 0, {}), domain_error);
  CHECK_THROWS_AS(wigner(joint, 0, {1, 0, 5, -1, 1, 5}), domain_error);
}
