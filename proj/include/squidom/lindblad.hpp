#pragma once

// Open-system dynamics in the column-stacking convention:
//   vec(A X B) = (B^T kron A) vec(X).

#include <Eigen/Sparse>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "squidom/device_model.hpp"
#include "squidom/fock.hpp"
#include "squidom/hamiltonian.hpp"
#include "squidom/ode.hpp"
#include "squidom/state.hpp"

namespace squidom {

struct CollapseChannel {
  QuantumOperator op;
  double rate = 0.0;
  std::string label;
};

/// Reference parameters for the degenerate parametric drive, used by the
/// steady-state stability guard. All in the model's frequency units.
struct ParametricDrive {
  double alpha = 0.0;
  double kappa = 0.0;
  double delta = 0.0;
};

struct LindbladModel {
  std::variant<QuantumOperator, PeriodicHamiltonian> hamiltonian;
  std::vector<CollapseChannel> channels;
  HilbertDims dims;
  std::optional<ParametricDrive> parametric;

  LindbladModel() = default;
  LindbladModel(QuantumOperator h, std::vector<CollapseChannel> c,
                std::optional<ParametricDrive> p = std::nullopt);
  LindbladModel(PeriodicHamiltonian h, std::vector<CollapseChannel> c,
                std::optional<ParametricDrive> p = std::nullopt);

  bool is_static() const { return std::holds_alternative<QuantumOperator>(hamiltonian); }
  double max_rate() const;
};

using SparseSuperoperator = Eigen::SparseMatrix<cplx>;

/// Cavity decay (kappa = omega_c/Q_c), mechanical damping gamma_m (n_th + 1)
/// and heating gamma_m n_th. The cavity thermal pair is added only when the
/// cavity occupation reaches 1e-6. Rates are divided by frequency_scale.
std::vector<CollapseChannel> standard_channels(const DeviceParameters& device, const HilbertDims& dims,
                                               double frequency_scale = 1.0);

/// Same channel set from rates already in model units.
std::vector<CollapseChannel> standard_channels(double kappa, double gamma_m, double n_th_mech,
                                               double n_th_cavity, const HilbertDims& dims);

/// d^2 x d^2 generator for a static Hamiltonian. Throws domain_error for a
/// time-periodic model.
SparseSuperoperator liouvillian(const LindbladModel& model);

/// -i (I kron H - H^T kron I)
SparseSuperoperator commutator_superoperator(const QuantumOperator& h);
SparseSuperoperator dissipator(const QuantumOperator& c, double rate);

struct TruncationReport {
  HilbertDims dims;
  std::vector<double> top_populations;
  double threshold = 1e-3;
  bool flagged = false;
};

TruncationReport truncation_report(const QuantumState& state, double threshold);

struct NamedOperator {
  std::string name;
  QuantumOperator op;
};

struct EvolveOptions {
  OdeOptions ode;
  std::vector<NamedOperator> observables;
  bool store_states = false;
  double top_population_threshold = 1e-3;
};

struct SimulationResult {
  std::vector<double> times;
  std::vector<std::pair<std::string, std::vector<double>>> observables;
  QuantumState final_state;
  std::vector<QuantumState> states;
  TruncationReport truncation;
  OdeStats stats;
  std::vector<std::string> warnings;

  const std::vector<double>& series(const std::string& name) const;
};

/// Adaptive DOP853 integration of the master equation. `times` must start
/// at 0 and increase strictly. The series "trace" is always recorded.
SimulationResult evolve(const LindbladModel& model, const QuantumState& initial,
                        const std::vector<double>& times, const EvolveOptions& options = {});

struct SteadyStateOptions {
  double residual_tolerance = 1e-10;
  std::size_t direct_limit = 40'000;  // d^2 above this uses restarted GMRES
  double top_population_threshold = 1e-3;
};

struct SteadyStateResult {
  QuantumState state;
  double residual = 0.0;
  std::string method;
  TruncationReport truncation;
  std::vector<std::string> warnings;
};

/// Solves L vec(rho) = 0 with one row replaced by the trace functional.
/// Throws degeneracy_error for a multi-dimensional null space and
/// convergence_error for a parametric drive at or above threshold.
SteadyStateResult solve_steady_state(const LindbladModel& model, const SteadyStateOptions& options = {});
QuantumState steady_state(const LindbladModel& model);

struct NamedObservable {
  std::string name;
  std::function<double(const QuantumState&)> evaluate;
};

struct ConvergedRun {
  HilbertDims dims;
  SteadyStateResult result;
  double value = 0.0;
  std::vector<std::pair<HilbertDims, double>> trend;
};

/// Walks the ladder and stops at the first rung whose observable differs from
/// the previous rung by less than `tolerance` (relative); that rung is returned. Throws convergence_error
/// with the trend when the ladder is exhausted.
ConvergedRun truncation_converge(const std::function<LindbladModel(const HilbertDims&)>& build,
                                 const std::vector<HilbertDims>& ladder, const NamedObservable& observable,
                                 double tolerance, const SteadyStateOptions& options = {});

}  // namespace squidom
