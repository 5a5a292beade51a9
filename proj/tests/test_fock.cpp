#include <doctest.h>

#include <cmath>

#include "squidom/fock.hpp"

using namespace squidom;

TEST_CASE("ladder operator matrix elements") {
  const int n = 6;
  const auto a = destroy(n);
  const auto ad = create(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx want = (i + 1 == j) ? std::sqrt(double(j)) : 0.0;
      CHECK(std::abs(a.coeff(i, j) - want) == 0.0);
      CHECK(std::abs(ad.coeff(j, i) - want) == 0.0);
    }
  const auto num = number(n);
  for (int i = 0; i < n; ++i) CHECK(num.coeff(i, i).real() == i);
  CHECK(a.is_sparse());
}

TEST_CASE("truncated commutator is identity except the last level") {
  const int n = 8;
  const auto c = commutator(destroy(n), create(n)).dense();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double want = i != j ? 0.0 : (i == n - 1 ? -(n - 1.0) : 1.0);
      CHECK(std::abs(c(i, j) - want) < 1e-14);
    }
}

TEST_CASE("tensor products follow the Kronecker convention") {
  const auto a = destroy(3), b = destroy(4);
  const auto ab = tensor({a, identity(4)});
  REQUIRE(ab.dims() == HilbertDims{3, 4});
  const Eigen::MatrixXcd k = Eigen::kroneckerProduct(a.dense(), Eigen::MatrixXcd::Identity(4, 4));
  CHECK((ab.dense() - k).norm() == 0.0);
  const auto eb = embed(b, HilbertDims{3, 4}, 1);
  const Eigen::MatrixXcd k2 = Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(3, 3), b.dense());
  CHECK((eb.dense() - k2).norm() == 0.0);
  // operators on different subsystems commute
  const auto ea = embed(a, HilbertDims{3, 4}, 0);
  CHECK(commutator(ea, eb).dense().norm() == 0.0);
  CHECK(tensor({a, b, identity(2)}).dims().total() == 24);
}

TEST_CASE("dims mismatch is rejected") {
  CHECK_THROWS_AS(destroy(3) + destroy(4), domain_error);
  CHECK_THROWS_AS(destroy(1), domain_error);
  CHECK_THROWS_AS(HilbertDims({3, 1}), domain_error);
  CHECK_THROWS_AS(embed(destroy(3), HilbertDims{4, 4}, 0), domain_error);
}

TEST_CASE("hermiticity flag") {
  auto x = destroy(5) + create(5);
  CHECK(x.is_hermitian());
  CHECK_NOTHROW(x.mark_hermitian());
  CHECK(x.hermitian_flag());
  auto a = destroy(5);
  CHECK_THROWS_AS(a.mark_hermitian(), domain_error);
  CHECK(a.hermiticity_error() == doctest::Approx(2.0));
}

TEST_CASE("dense and sparse storage agree") {
  const auto a = destroy(4);
  QuantumOperator dense_a(a.dense(), HilbertDims{4});
  CHECK(dense_a.is_sparse());  // fill below threshold
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Constant(4, 4, cplx(1.0, 0.5));
  QuantumOperator f(full, HilbertDims{4});
  CHECK(!f.is_sparse());
  CHECK(((f * a).dense() - full * a.dense()).norm() < 1e-14);
  CHECK(((a * f).dense() - a.dense() * full).norm() < 1e-14);
  CHECK(((cplx(2.0) * a - a).dense() - a.dense()).norm() == 0.0);
}

TEST_CASE("real scalar instantiation") {
  const auto a = destroy<double>(5);
  const auto n = create<double>(5) * a;
  CHECK((n.dense() - number<double>(5).dense()).norm() < 1e-14);
}
