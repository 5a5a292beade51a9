#include "squidom/lindblad.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace squidom {

namespace {

constexpr cplx I{0.0, 1.0};

SparseSuperoperator sparse_identity(Eigen::Index d) {
  SparseSuperoperator id(d, d);
  id.setIdentity();
  return id;
}

SparseSuperoperator kron(const SparseSuperoperator& a, const SparseSuperoperator& b) {
  SparseSuperoperator out = Eigen::kroneckerProduct(a, b);
  return out;
}

double max_abs_coeff(const QuantumOperator& op) {
  const auto s = op.sparse();
  double m = 0.0;
  for (int k = 0; k < s.outerSize(); ++k)
    for (QuantumOperator::Sparse::InnerIterator it(s, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double hamiltonian_scale(const LindbladModel& model) {
  if (const auto* h = std::get_if<QuantumOperator>(&model.hamiltonian)) return max_abs_coeff(*h);
  const auto& p = std::get<PeriodicHamiltonian>(model.hamiltonian);
  double m = max_abs_coeff(p.static_part);
  for (const auto& part : p.cosine_parts) m += max_abs_coeff(part.op);
  return m;
}

const QuantumOperator& static_part(const LindbladModel& model) {
  if (const auto* h = std::get_if<QuantumOperator>(&model.hamiltonian)) return *h;
  return std::get<PeriodicHamiltonian>(model.hamiltonian).static_part;
}

SparseSuperoperator generator_without_drive(const LindbladModel& model) {
  SparseSuperoperator l = commutator_superoperator(static_part(model));
  for (const auto& c : model.channels)
    if (c.rate > 0) l += dissipator(c.op, c.rate);
  l.makeCompressed();
  return l;
}

void check_dims(const QuantumOperator& op, const HilbertDims& dims, const char* what) {
  if (!(op.dims() == dims))
    throw domain_error(std::string(what) + " dims " + op.dims().str() + " do not match model dims " +
                       dims.str());
}

}  // namespace

LindbladModel::LindbladModel(QuantumOperator h, std::vector<CollapseChannel> c,
                             std::optional<ParametricDrive> p)
    : hamiltonian(std::move(h)), channels(std::move(c)), parametric(p) {
  dims = std::get<QuantumOperator>(hamiltonian).dims();
  for (const auto& ch : channels) {
    check_dims(ch.op, dims, "collapse operator");
    if (!(ch.rate >= 0)) throw domain_error("collapse rate must be >= 0");
  }
}

LindbladModel::LindbladModel(PeriodicHamiltonian h, std::vector<CollapseChannel> c,
                             std::optional<ParametricDrive> p)
    : hamiltonian(std::move(h)), channels(std::move(c)), parametric(p) {
  const auto& ph = std::get<PeriodicHamiltonian>(hamiltonian);
  dims = ph.static_part.dims();
  for (const auto& part : ph.cosine_parts) check_dims(part.op, dims, "drive operator");
  for (const auto& ch : channels) {
    check_dims(ch.op, dims, "collapse operator");
    if (!(ch.rate >= 0)) throw domain_error("collapse rate must be >= 0");
  }
}

double LindbladModel::max_rate() const {
  double r = 0.0;
  for (const auto& c : channels) r = std::max(r, c.rate);
  return r;
}

std::vector<CollapseChannel> standard_channels(double kappa, double gamma_m, double n_th_mech,
                                               double n_th_cavity, const HilbertDims& dims) {
  if (dims.size() != 2) throw domain_error("standard_channels expects [cavity, mechanics] dims");
  const auto a = embed(destroy(dims[0]), dims, 0);
  const auto b = embed(destroy(dims[1]), dims, 1);
  std::vector<CollapseChannel> out;
  if (n_th_cavity >= 1e-6) {
    out.push_back({a, kappa * (n_th_cavity + 1.0), "cavity_decay"});
    out.push_back({a.adjoint(), kappa * n_th_cavity, "cavity_heating"});
  } else {
    out.push_back({a, kappa, "cavity_decay"});
  }
  out.push_back({b, gamma_m * (n_th_mech + 1.0), "mechanical_damping"});
  if (n_th_mech > 0) out.push_back({b.adjoint(), gamma_m * n_th_mech, "mechanical_heating"});
  return out;
}

std::vector<CollapseChannel> standard_channels(const DeviceParameters& device, const HilbertDims& dims,
                                               double frequency_scale) {
  if (!(frequency_scale > 0)) throw domain_error("frequency_scale must be > 0");
  const auto q = figures_of_merit(device);
  const double T = device.bias.temperature;
  return standard_channels(q.kappa / frequency_scale, q.gamma_m / frequency_scale,
                           thermal_occupation(device.mechanical.frequency, T),
                           thermal_occupation(q.renormalized_cavity_frequency, T), dims);
}

SparseSuperoperator commutator_superoperator(const QuantumOperator& h) {
  const auto id = sparse_identity(h.rows());
  const auto hs = h.sparse();
  const SparseSuperoperator ht = hs.transpose();
  SparseSuperoperator l = -I * (kron(id, hs) - kron(ht, id));
  return l;
}

SparseSuperoperator dissipator(const QuantumOperator& c, double rate) {
  const auto id = sparse_identity(c.rows());
  const auto cs = c.sparse();
  const SparseSuperoperator cdc = cs.adjoint() * cs;
  const SparseSuperoperator cdct = cdc.transpose();
  const SparseSuperoperator cconj = cs.conjugate();
  SparseSuperoperator l = kron(cconj, cs) - 0.5 * kron(id, cdc) - 0.5 * kron(cdct, id);
  return cplx(rate) * l;
}

SparseSuperoperator liouvillian(const LindbladModel& model) {
  if (!model.is_static())
    throw domain_error("liouvillian: time-periodic Hamiltonian is not supported here; use evolve");
  return generator_without_drive(model);
}

TruncationReport truncation_report(const QuantumState& state, double threshold) {
  TruncationReport r;
  r.dims = state.dims;
  r.threshold = threshold;
  r.top_populations = top_level_populations(state);
  for (double p : r.top_populations) r.flagged = r.flagged || p >= threshold;
  return r;
}

const std::vector<double>& SimulationResult::series(const std::string& name) const {
  for (const auto& [n, s] : observables)
    if (n == name) return s;
  throw std::out_of_range("no observable named " + name);
}

SimulationResult evolve(const LindbladModel& model, const QuantumState& initial,
                        const std::vector<double>& times, const EvolveOptions& options) {
  if (!(initial.dims == model.dims))
    throw domain_error("evolve: initial state dims " + initial.dims.str() + " vs model dims " +
                       model.dims.str());
  if (times.empty() || times.front() != 0.0) throw domain_error("evolve: times must start at 0");
  for (const auto& o : options.observables) check_dims(o.op, model.dims, "observable");

  const Eigen::Index d = model.dims.total();
  const SparseSuperoperator l0 = generator_without_drive(model);

  struct Drive {
    SparseSuperoperator k;
    double frequency, phase;
  };
  std::vector<Drive> drives;
  OdeOptions ode = options.ode;
  if (const auto* ph = std::get_if<PeriodicHamiltonian>(&model.hamiltonian)) {
    for (const auto& p : ph->cosine_parts)
      drives.push_back({commutator_superoperator(p.op), p.frequency, p.phase});
    const double w = ph->fastest_frequency();
    if (w > 0) ode.max_step = std::min(ode.max_step, 2.0 * std::numbers::pi / w / 20.0);
  }

  SimulationResult result;
  result.times = times;
  result.observables.emplace_back("trace", std::vector<double>{});
  for (const auto& o : options.observables) result.observables.emplace_back(o.name, std::vector<double>{});

  Eigen::VectorXcd tmp(d * d);
  auto rhs = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
    dy.noalias() = l0 * y;
    for (const auto& drv : drives) {
      tmp.noalias() = drv.k * y;
      dy += std::cos(drv.frequency * t + drv.phase) * tmp;
    }
  };
  auto observe = [&](std::size_t, double, const Eigen::VectorXcd& y) {
    QuantumState s(Eigen::Map<const Eigen::MatrixXcd>(y.data(), d, d), model.dims);
    result.observables[0].second.push_back(s.density_matrix.trace().real());
    for (std::size_t i = 0; i < options.observables.size(); ++i)
      result.observables[i + 1].second.push_back(expectation(options.observables[i].op, s).real());
    if (options.store_states) result.states.push_back(s);
    result.final_state = std::move(s);
  };

  const Eigen::VectorXcd y0 = Eigen::Map<const Eigen::VectorXcd>(initial.density_matrix.data(), d * d);
  try {
    result.stats = integrate_dop853(rhs, y0, std::span<const double>(times), ode, observe);
  } catch (const convergence_error& e) {
    std::ostringstream msg;
    const double rate = model.max_rate();
    msg << e.what() << "; stiffness ratio max|H|/kappa = ";
    if (rate > 0)
      msg << hamiltonian_scale(model) / rate;
    else
      msg << "inf (no dissipation)";
    throw convergence_error(msg.str());
  }
  result.truncation = truncation_report(result.final_state, options.top_population_threshold);
  if (result.truncation.flagged)
    result.warnings.push_back("top Fock level population exceeds threshold; enlarge dims");
  return result;
}

SteadyStateResult solve_steady_state(const LindbladModel& model, const SteadyStateOptions& options) {
  if (!model.is_static())
    throw domain_error("steady_state requires a static Hamiltonian");
  if (!(model.max_rate() > 0)) throw domain_error("steady_state requires at least one decay channel");

  SteadyStateResult out;
  if (model.parametric) {
    const auto& p = *model.parametric;
    const double threshold = p.kappa / 2.0;
    if (p.alpha >= threshold) {
      std::ostringstream msg;
      msg << "parametric drive at or above threshold: alpha/kappa = " << p.alpha / p.kappa
          << " >= 0.5; no stable steady state";
      throw convergence_error(msg.str());
    }
    if (p.alpha > 0.8 * threshold)
      out.warnings.push_back("parametric drive within 20% of threshold (alpha > 0.4 kappa)");
  }

  const SparseSuperoperator l = liouvillian(model);
  const Eigen::Index d = model.dims.total();
  const Eigen::Index n = d * d;

  // replace row 0 (the rho_00 equation) by the trace functional
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(l.nonZeros() + d));
  for (int k = 0; k < l.outerSize(); ++k)
    for (SparseSuperoperator::InnerIterator it(l, k); it; ++it)
      if (it.row() != 0) trip.emplace_back(it.row(), it.col(), it.value());
  for (Eigen::Index i = 0; i < d; ++i) trip.emplace_back(0, i * (d + 1), 1.0);
  SparseSuperoperator a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(0) = 1.0;

  Eigen::VectorXcd x;
  if (static_cast<std::size_t>(n) <= options.direct_limit) {
    out.method = "sparse_lu";
    Eigen::SparseLU<SparseSuperoperator, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success)
      throw degeneracy_error("steady state is not unique: Liouvillian null space has dimension > 1 (" +
                             lu.lastErrorMessage() + ")");
    x = lu.solve(rhs);
    for (int refine = 0; refine < 2; ++refine) x += lu.solve(Eigen::VectorXcd(rhs - a * x));
  } else {
    out.method = "gmres";
    Eigen::GMRES<SparseSuperoperator, Eigen::IdentityPreconditioner> gmres(a);
    gmres.set_restart(200);
    gmres.setTolerance(1e-14);
    gmres.setMaxIterations(20 * static_cast<int>(std::min<Eigen::Index>(n, 50'000)));
    x = gmres.solve(rhs);
    if (gmres.info() != Eigen::Success && (a * x - rhs).norm() > options.residual_tolerance)
      throw convergence_error("steady_state: GMRES did not converge (estimated error " +
                              std::to_string(gmres.error()) + ")");
  }
  if (!x.allFinite())
    throw degeneracy_error("steady state is not unique: singular trace-constrained system");

  Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), n);
  out.residual = (l * v).norm();
  if (!(out.residual < options.residual_tolerance)) {
    std::ostringstream msg;
    msg << "steady state residual " << out.residual << " exceeds " << options.residual_tolerance
        << "; Liouvillian null space is degenerate or ill-conditioned";
    throw degeneracy_error(msg.str());
  }
  out.state = QuantumState(std::move(rho), model.dims);
  out.truncation = truncation_report(out.state, options.top_population_threshold);
  if (out.truncation.flagged)
    out.warnings.push_back("top Fock level population exceeds threshold; enlarge dims");
  return out;
}

QuantumState steady_state(const LindbladModel& model) { return solve_steady_state(model).state; }

ConvergedRun truncation_converge(const std::function<LindbladModel(const HilbertDims&)>& build,
                                 const std::vector<HilbertDims>& ladder, const NamedObservable& observable,
                                 double tolerance, const SteadyStateOptions& options) {
  if (ladder.size() < 2) throw domain_error("truncation ladder needs at least two rungs");
  ConvergedRun run;
  std::optional<SteadyStateResult> previous;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    auto res = solve_steady_state(build(ladder[k]), options);
    const double v = observable.evaluate(res.state);
    run.trend.emplace_back(ladder[k], v);
    if (previous) {
      const double prev = run.trend[k - 1].second;
      const double scale = std::max(std::abs(v), std::abs(prev));
      if (std::abs(v - prev) <= tolerance * scale + 1e-14) {
        run.dims = ladder[k];
        run.value = v;
        run.result = std::move(res);
        return run;
      }
    }
    previous = std::move(res);
  }
  std::ostringstream msg;
  msg << "truncation ladder exhausted without convergence of " << observable.name << ":";
  for (const auto& [dims, v] : run.trend) msg << " " << dims.str() << "=" << v;
  throw convergence_error(msg.str());
}

}  // namespace squidom
