#include "squidom/state.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace squidom {

QuantumState::QuantumState(Eigen::MatrixXcd rho, HilbertDims d, double discarded)
    : density_matrix(std::move(rho)), dims(std::move(d)), discarded_weight(discarded) {
  if (density_matrix.rows() != density_matrix.cols() || density_matrix.rows() != dims.total())
    throw domain_error("density matrix shape does not match HilbertDims " + dims.str());
}

StateDiagnostics diagnose(const QuantumState& state) {
  const auto& rho = state.density_matrix;
  StateDiagnostics d;
  d.trace_error = std::abs(rho.trace() - cplx(1.0));
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

namespace {

Eigen::Index flat_index(const HilbertDims& dims, const std::vector<int>& occ) {
  Eigen::Index idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + occ[i];
  return idx;
}

}  // namespace

QuantumState basis_state(const HilbertDims& dims, const std::vector<int>& occupation) {
  if (occupation.size() != dims.size())
    throw domain_error("basis_state: occupation list length differs from subsystem count");
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (occupation[i] < 0 || occupation[i] >= dims[i])
      throw domain_error("basis_state: occupation " + std::to_string(occupation[i]) +
                         " out of range for subsystem dim " + std::to_string(dims[i]));
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dims.total(), dims.total());
  const auto k = flat_index(dims, occupation);
  rho(k, k) = 1.0;
  return {std::move(rho), dims};
}

QuantumState coherent_state(int dim, cplx amplitude) {
  HilbertDims dims{dim};
  Eigen::VectorXcd psi(dim);
  // Poisson amplitudes e^{-|b|^2/2} b^n / sqrt(n!)
  psi(0) = std::exp(-0.5 * std::norm(amplitude));
  for (int n = 1; n < dim; ++n) psi(n) = psi(n - 1) * amplitude / std::sqrt(static_cast<double>(n));
  const double kept = psi.squaredNorm();
  psi /= std::sqrt(kept);
  return {psi * psi.adjoint(), dims, std::max(0.0, 1.0 - kept)};
}

QuantumState thermal_state(int dim, double mean_occupation) {
  if (!(mean_occupation >= 0)) throw domain_error("thermal_state: mean occupation must be >= 0");
  HilbertDims dims{dim};
  Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
  const double ratio = mean_occupation / (mean_occupation + 1.0);
  p(0) = 1.0 / (mean_occupation + 1.0);
  for (int n = 1; n < dim; ++n) p(n) = p(n - 1) * ratio;
  const double kept = p.sum();
  p /= kept;
  Eigen::MatrixXcd rho = p.cast<cplx>().asDiagonal();
  return {std::move(rho), dims, std::max(0.0, 1.0 - kept)};
}

QuantumState product_state(const std::vector<QuantumState>& factors) {
  if (factors.empty()) throw domain_error("product_state: no factors");
  Eigen::MatrixXcd rho = factors.front().density_matrix;
  HilbertDims dims = factors.front().dims;
  double discarded = factors.front().discarded_weight;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(rho, factors[i].density_matrix);
    rho = std::move(next);
    dims = dims.concat(factors[i].dims);
    discarded = 1.0 - (1.0 - discarded) * (1.0 - factors[i].discarded_weight);
  }
  return {std::move(rho), std::move(dims), discarded};
}

QuantumState pure_state(const Eigen::VectorXcd& psi, const HilbertDims& dims) {
  const Eigen::VectorXcd n = psi.normalized();
  return {n * n.adjoint(), dims};
}

cplx expectation(const QuantumOperator& op, const QuantumState& state) {
  if (!(op.dims() == state.dims))
    throw domain_error("expectation: operator dims " + op.dims().str() + " vs state dims " +
                       state.dims.str());
  if (op.is_sparse()) {
    // Tr(A rho) = sum_ij A_ij rho_ji
    const auto a = op.sparse();
    cplx acc = 0.0;
    for (int k = 0; k < a.outerSize(); ++k)
      for (typename QuantumOperator::Sparse::InnerIterator it(a, k); it; ++it)
        acc += it.value() * state.density_matrix(it.col(), it.row());
    return acc;
  }
  return (op.dense() * state.density_matrix).trace();
}

QuantumState partial_trace(const QuantumState& state, std::size_t index) {
  const auto& dims = state.dims;
  if (index >= dims.size()) throw domain_error("partial_trace: subsystem index out of range");
  Eigen::Index before = 1, after = 1;
  for (std::size_t i = 0; i < index; ++i) before *= dims[i];
  for (std::size_t i = index + 1; i < dims.size(); ++i) after *= dims[i];
  const Eigen::Index n = dims[index];

  Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(n, n);
  const auto& rho = state.density_matrix;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (Eigen::Index b = 0; b < before; ++b)
        for (Eigen::Index a = 0; a < after; ++a)
          acc += rho((b * n + i) * after + a, (b * n + j) * after + a);
      red(i, j) = acc;
    }
  return {std::move(red), HilbertDims{static_cast<int>(n)}};
}

std::vector<double> top_level_populations(const QuantumState& state) {
  std::vector<double> out;
  for (std::size_t i = 0; i < state.dims.size(); ++i) {
    const auto red = partial_trace(state, i);
    const auto top = red.density_matrix.rows() - 1;
    out.push_back(red.density_matrix(top, top).real());
  }
  return out;
}

namespace {

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const QuantumState& a, const QuantumState& b) {
  if (!(a.dims == b.dims)) throw domain_error("fidelity: dims mismatch");
  const Eigen::MatrixXcd s = psd_sqrt(a.density_matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s * b.density_matrix * s, Eigen::EigenvaluesOnly);
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

double purity(const QuantumState& state) {
  return (state.density_matrix * state.density_matrix).trace().real();
}

}  // namespace squidom
