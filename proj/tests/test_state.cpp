#include <doctest.h>

#include <cmath>

#include "squidom/state.hpp"

using namespace squidom;

namespace {

double poisson(double mean, int k) {
  return std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
}

}  // namespace

TEST_CASE("coherent state populations are Poissonian") {
  const cplx amp(1.2, -0.7);
  const double mean = std::norm(amp);
  const auto s = coherent_state(40, amp);
  CHECK(s.discarded_weight < 1e-15);
  for (int k = 0; k < 15; ++k) CHECK(s.density_matrix(k, k).real() == doctest::Approx(poisson(mean, k)).epsilon(1e-12));
  CHECK(expectation(destroy(40), s).real() == doctest::Approx(amp.real()).epsilon(1e-12));
  CHECK(expectation(destroy(40), s).imag() == doctest::Approx(amp.imag()).epsilon(1e-12));
  CHECK(purity(s) == doctest::Approx(1.0));

  const auto t = coherent_state(4, 2.0);
  CHECK(t.discarded_weight > 0.1);
  CHECK(t.density_matrix.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("thermal state is geometric") {
  const double n = 0.8;
  const auto s = thermal_state(60, n);
  for (int k = 0; k < 10; ++k)
    CHECK(s.density_matrix(k, k).real() == doctest::Approx(std::pow(n, k) / std::pow(1 + n, k + 1)).epsilon(1e-10));
  CHECK(expectation(number(60), s).real() == doctest::Approx(n).epsilon(1e-10));
  const auto v = thermal_state(5, 0.0);
  CHECK(v.density_matrix(0, 0).real() == 1.0);
}

TEST_CASE("basis and product states") {
  const auto b = basis_state(HilbertDims{3, 4}, {1, 2});
  CHECK(b.density_matrix(6, 6).real() == 1.0);
  CHECK_THROWS_AS(basis_state(HilbertDims{3, 4}, {3, 0}), domain_error);
  const auto p = product_state({thermal_state(3, 0.5), coherent_state(4, 0.3)});
  CHECK(p.dims == HilbertDims{3, 4});
  const auto r0 = partial_trace(p, 0);
  const auto r1 = partial_trace(p, 1);
  CHECK((r0.density_matrix - thermal_state(3, 0.5).density_matrix).norm() < 1e-14);
  CHECK((r1.density_matrix - coherent_state(4, 0.3).density_matrix).norm() < 1e-14);
}

TEST_CASE("partial trace of an entangled state") {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  const auto bell = pure_state(psi, HilbertDims{2, 2});
  const auto r = partial_trace(bell, 0);
  CHECK((r.density_matrix - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
  CHECK(purity(r) == doctest::Approx(0.5));
}

TEST_CASE("diagnostics and fidelity") {
  const auto s = thermal_state(6, 0.4);
  const auto d = diagnose(s);
  CHECK(d.valid());
  CHECK(d.min_eigenvalue > 0);
  CHECK(fidelity(s, s) == doctest::Approx(1.0).epsilon(1e-10));
  const auto a = basis_state(HilbertDims{3}, {0});
  const auto b = basis_state(HilbertDims{3}, {1});
  CHECK(fidelity(a, b) < 1e-14);
  // pure-state overlap
  const auto c1 = coherent_state(30, 0.5), c2 = coherent_state(30, 0.9);
  CHECK(fidelity(c1, c2) == doctest::Approx(std::exp(-0.16)).epsilon(1e-8));

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  CHECK(!diagnose(QuantumState(bad, HilbertDims{2})).valid());
}

TEST_CASE("top level populations") {
  const auto p = product_state({thermal_state(3, 1.0), basis_state(HilbertDims{4}, {3})});
  const auto top = top_level_populations(p);
  CHECK(top[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-14));  // renormalized geometric tail
  CHECK(top[1] == doctest::Approx(1.0));
}
