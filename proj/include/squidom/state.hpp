#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "squidom/fock.hpp"

namespace squidom {

/// Density matrix on a truncated tensor-product Fock space.
struct QuantumState {
  Eigen::MatrixXcd density_matrix;
  HilbertDims dims;
  /// Probability mass dropped by truncation before renormalization
  /// (coherent and thermal constructors); zero otherwise.
  double discarded_weight = 0.0;

  QuantumState() = default;
  QuantumState(Eigen::MatrixXcd rho, HilbertDims d, double discarded = 0.0);
};

struct StateDiagnostics {
  double trace_error = 0.0;        // |Tr rho - 1|
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;     // of the Hermitian part

  bool valid(double trace_tol = 1e-10, double herm_tol = 1e-12, double eig_tol = 1e-10) const {
    return trace_error < trace_tol && hermiticity_error < herm_tol && min_eigenvalue > -eig_tol;
  }
};

StateDiagnostics diagnose(const QuantumState& state);

QuantumState basis_state(const HilbertDims& dims, const std::vector<int>& occupation);
QuantumState coherent_state(int dim, cplx amplitude);
QuantumState thermal_state(int dim, double mean_occupation);
QuantumState product_state(const std::vector<QuantumState>& factors);
QuantumState pure_state(const Eigen::VectorXcd& psi, const HilbertDims& dims);

/// Tr(op rho). Throws domain_error on dimension mismatch.
cplx expectation(const QuantumOperator& op, const QuantumState& state);

/// Reduced state of subsystem `index`.
QuantumState partial_trace(const QuantumState& state, std::size_t index);

/// Population of the highest retained Fock level of each subsystem.
std::vector<double> top_level_populations(const QuantumState& state);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const QuantumState& a, const QuantumState& b);

double purity(const QuantumState& state);

}  // namespace squidom
