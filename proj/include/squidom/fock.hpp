#pragma once

// Truncated Fock-space operators with subsystem dimension metadata.
//
// An operator stores either a dense or a compressed sparse matrix; the choice
// is made from the fill fraction at construction (sparse below 25%) and is
// invisible to callers. Arithmetic promotes to dense when either side is dense.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "squidom/errors.hpp"

namespace squidom {

using cplx = std::complex<double>;

class HilbertDims {
 public:
  HilbertDims() = default;
  HilbertDims(std::initializer_list<int> dims) : HilbertDims(std::vector<int>(dims)) {}
  explicit HilbertDims(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw domain_error("HilbertDims needs at least one subsystem");
    for (int d : dims_)
      if (d < 2) throw domain_error("each truncated subsystem needs dimension >= 2");
  }

  const std::vector<int>& subsystems() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.size(); }
  int operator[](std::size_t i) const { return dims_.at(i); }
  Eigen::Index total() const {
    return std::accumulate(dims_.begin(), dims_.end(), Eigen::Index{1},
                           [](Eigen::Index a, int b) { return a * b; });
  }

  HilbertDims concat(const HilbertDims& other) const {
    if (dims_.empty()) return other;
    std::vector<int> d = dims_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return HilbertDims(std::move(d));
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < dims_.size(); ++i) s += (i ? "," : "") + std::to_string(dims_[i]);
    return s + "]";
  }

  friend bool operator==(const HilbertDims&, const HilbertDims&) = default;

 private:
  std::vector<int> dims_;
};

inline constexpr double sparse_fill_threshold = 0.25;

template <typename Scalar>
class BasicOperator {
 public:
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Sparse = Eigen::SparseMatrix<Scalar>;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;

  BasicOperator() = default;

  BasicOperator(Dense m, HilbertDims dims) : dims_(std::move(dims)) {
    check_shape(m.rows(), m.cols());
    assign(std::move(m));
  }

  BasicOperator(Sparse m, HilbertDims dims) : dims_(std::move(dims)) {
    check_shape(m.rows(), m.cols());
    m.makeCompressed();
    assign(std::move(m));
  }

  const HilbertDims& dims() const noexcept { return dims_; }
  Eigen::Index rows() const { return dims_.total(); }
  bool is_sparse() const noexcept { return std::holds_alternative<Sparse>(mat_); }

  Dense dense() const {
    if (auto* s = std::get_if<Sparse>(&mat_)) return Dense(*s);
    return std::get<Dense>(mat_);
  }
  Sparse sparse() const {
    if (auto* d = std::get_if<Dense>(&mat_)) return d->sparseView();
    return std::get<Sparse>(mat_);
  }

  Scalar coeff(Eigen::Index i, Eigen::Index j) const {
    if (auto* s = std::get_if<Sparse>(&mat_)) return s->coeff(i, j);
    return std::get<Dense>(mat_)(i, j);
  }

  BasicOperator adjoint() const {
    if (auto* s = std::get_if<Sparse>(&mat_)) return {Sparse(s->adjoint()), dims_};
    return {Dense(std::get<Dense>(mat_).adjoint()), dims_};
  }

  /// max |A - A^dagger|
  RealScalar hermiticity_error() const {
    const Dense d = dense();
    return d.rows() ? (d - d.adjoint()).cwiseAbs().maxCoeff() : RealScalar(0);
  }
  bool is_hermitian(RealScalar tol = RealScalar(1e-12)) const { return hermiticity_error() < tol; }

  bool hermitian_flag() const noexcept { return hermitian_; }
  /// Sets the Hermiticity flag after verifying it to 1e-12 in max-norm.
  BasicOperator& mark_hermitian() {
    if (!is_hermitian()) throw domain_error("operator flagged Hermitian is not Hermitian to 1e-12");
    hermitian_ = true;
    return *this;
  }

  friend BasicOperator operator+(const BasicOperator& a, const BasicOperator& b) {
    a.check_same(b);
    if (a.is_sparse() && b.is_sparse()) return {Sparse(a.sparse() + b.sparse()), a.dims_};
    return {Dense(a.dense() + b.dense()), a.dims_};
  }
  friend BasicOperator operator-(const BasicOperator& a, const BasicOperator& b) {
    a.check_same(b);
    if (a.is_sparse() && b.is_sparse()) return {Sparse(a.sparse() - b.sparse()), a.dims_};
    return {Dense(a.dense() - b.dense()), a.dims_};
  }
  friend BasicOperator operator*(const BasicOperator& a, const BasicOperator& b) {
    a.check_same(b);
    if (a.is_sparse() && b.is_sparse()) return {Sparse(a.sparse() * b.sparse()), a.dims_};
    return {Dense(a.dense() * b.dense()), a.dims_};
  }
  friend BasicOperator operator*(Scalar s, const BasicOperator& a) {
    if (a.is_sparse()) return {Sparse(s * a.sparse()), a.dims_};
    return {Dense(s * a.dense()), a.dims_};
  }
  friend BasicOperator operator*(const BasicOperator& a, Scalar s) { return s * a; }
  friend BasicOperator operator-(const BasicOperator& a) { return Scalar(-1) * a; }
  BasicOperator& operator+=(const BasicOperator& b) { return *this = *this + b; }
  BasicOperator& operator-=(const BasicOperator& b) { return *this = *this - b; }

 private:
  void check_shape(Eigen::Index r, Eigen::Index c) const {
    if (r != c || r != dims_.total())
      throw domain_error("operator matrix shape does not match HilbertDims " + dims_.str());
  }
  void check_same(const BasicOperator& b) const {
    if (!(dims_ == b.dims_))
      throw domain_error("operator dims mismatch: " + dims_.str() + " vs " + b.dims_.str());
  }

  void assign(Dense m) {
    const double n = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
    const double nnz = static_cast<double>((m.array() != Scalar(0)).count());
    if (n > 0 && nnz / n < sparse_fill_threshold)
      mat_ = Sparse(m.sparseView());
    else
      mat_ = std::move(m);
  }
  void assign(Sparse m) {
    m.prune(Scalar(0));
    const double n = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
    if (n > 0 && static_cast<double>(m.nonZeros()) / n >= sparse_fill_threshold)
      mat_ = Dense(m);
    else
      mat_ = std::move(m);
  }

  HilbertDims dims_;
  std::variant<Dense, Sparse> mat_;
  bool hermitian_ = false;
};

using QuantumOperator = BasicOperator<cplx>;

// ---------------------------------------------------------------------------
// Single-mode ladder operators

template <typename Scalar = cplx>
BasicOperator<Scalar> destroy(int dim) {
  if (dim < 2) throw domain_error("destroy: dim must be >= 2");
  using Sparse = typename BasicOperator<Scalar>::Sparse;
  std::vector<Eigen::Triplet<Scalar>> t;
  for (int n = 1; n < dim; ++n) t.emplace_back(n - 1, n, Scalar(std::sqrt(static_cast<double>(n))));
  Sparse m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return {std::move(m), HilbertDims{dim}};
}

template <typename Scalar = cplx>
BasicOperator<Scalar> create(int dim) {
  return destroy<Scalar>(dim).adjoint();
}

template <typename Scalar = cplx>
BasicOperator<Scalar> number(int dim) {
  if (dim < 2) throw domain_error("number: dim must be >= 2");
  using Sparse = typename BasicOperator<Scalar>::Sparse;
  std::vector<Eigen::Triplet<Scalar>> t;
  for (int n = 1; n < dim; ++n) t.emplace_back(n, n, Scalar(n));
  Sparse m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return BasicOperator<Scalar>(std::move(m), HilbertDims{dim}).mark_hermitian();
}

template <typename Scalar = cplx>
BasicOperator<Scalar> identity(const HilbertDims& dims) {
  using Sparse = typename BasicOperator<Scalar>::Sparse;
  Sparse m(dims.total(), dims.total());
  m.setIdentity();
  return BasicOperator<Scalar>(std::move(m), dims).mark_hermitian();
}

template <typename Scalar = cplx>
BasicOperator<Scalar> identity(int dim) {
  return identity<Scalar>(HilbertDims{dim});
}

/// Kronecker product in list order; dims are concatenated.
template <typename Scalar>
BasicOperator<Scalar> tensor(const std::vector<BasicOperator<Scalar>>& ops) {
  if (ops.empty()) throw domain_error("tensor: empty operator list");
  using Sparse = typename BasicOperator<Scalar>::Sparse;
  Sparse acc = ops.front().sparse();
  HilbertDims dims = ops.front().dims();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    Sparse next = Eigen::kroneckerProduct(acc, ops[i].sparse());
    acc = std::move(next);
    dims = dims.concat(ops[i].dims());
  }
  return {std::move(acc), std::move(dims)};
}

template <typename Scalar>
BasicOperator<Scalar> tensor(std::initializer_list<BasicOperator<Scalar>> ops) {
  return tensor(std::vector<BasicOperator<Scalar>>(ops));
}

/// Embeds a single-subsystem operator at position `index` of `dims`.
template <typename Scalar>
BasicOperator<Scalar> embed(const BasicOperator<Scalar>& op, const HilbertDims& dims, std::size_t index) {
  if (index >= dims.size() || op.dims().size() != 1 || op.rows() != dims[index])
    throw domain_error("embed: operator does not match subsystem " + std::to_string(index) + " of " +
                       dims.str());
  std::vector<BasicOperator<Scalar>> factors;
  for (std::size_t i = 0; i < dims.size(); ++i)
    factors.push_back(i == index ? op : identity<Scalar>(dims[i]));
  return tensor(factors);
}

template <typename Scalar>
BasicOperator<Scalar> commutator(const BasicOperator<Scalar>& a, const BasicOperator<Scalar>& b) {
  return a * b - b * a;
}

}  // namespace squidom
