#include "squidom/experiments.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "squidom/errors.hpp"
#include "squidom/parameters.hpp"

namespace squidom {

using nlohmann::ordered_json;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double hz(double w) { return w / two_pi; }

/// Results in input order; the first exception (by index) is rethrown.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nthreads = std::min(hw, n);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

ordered_json dims_json(const HilbertDims& d) { return d.subsystems(); }

ordered_json ode_json(const OdeOptions& o) {
  ordered_json j;
  j["method"] = "DOP853";
  j["rtol"] = o.rtol;
  j["atol"] = o.atol;
  if (std::isfinite(o.max_step)) j["max_step"] = o.max_step;
  return j;
}

ordered_json truncation_json(const TruncationReport& t) {
  ordered_json j;
  j["dims"] = dims_json(t.dims);
  j["top_populations"] = t.top_populations;
  j["threshold"] = t.threshold;
  j["flagged"] = t.flagged;
  return j;
}

ordered_json state_json(const QuantumState& s) {
  const auto d = diagnose(s);
  ordered_json j;
  j["trace_error"] = d.trace_error;
  j["hermiticity_error"] = d.hermiticity_error;
  j["min_eigenvalue"] = d.min_eigenvalue;
  j["valid"] = d.valid();
  return j;
}

ordered_json rotating_frame_provenance(double frequency_scale) {
  ordered_json p;
  p["frame"] = "rotating at half the modulation frequency, rotating-wave approximation";
  p["units"] = "rates divided by frequency_scale; kappa = 1 unless stated";
  p["frequency_scale_rad_s"] = frequency_scale;
  p["vectorization"] = "column stacking";
  return p;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw validation_error("scenario.samples", "must be >= 2");
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  t.back() = b;
  return t;
}

std::string error_text(const std::exception& e) { return e.what(); }

}  // namespace

// ---------------------------------------------------------------------------

ordered_json to_json(const ScaledModel& m) {
  ordered_json j;
  j["kappa"] = m.kappa;
  j["g0"] = m.g0;
  j["omega_m"] = m.omega_m;
  j["gamma_m"] = m.gamma_m;
  j["alpha"] = m.alpha;
  j["delta"] = m.delta;
  j["pump"] = m.pump;
  j["n_th_mech"] = m.n_th_mech;
  j["n_th_cavity"] = m.n_th_cavity;
  j["dims"] = dims_json(m.dims);
  j["frequency_scale_rad_s"] = m.frequency_scale;
  return j;
}

LindbladModel build_model(const ScaledModel& m) {
  if (!(m.kappa > 0)) throw validation_error("model.kappa", "must be > 0");
  if (!(m.gamma_m >= 0)) throw validation_error("model.gamma_m", "must be >= 0");
  if (!(m.n_th_mech >= 0)) throw validation_error("model.n_th_mech", "must be >= 0");
  if (!(m.n_th_cavity >= 0)) throw validation_error("model.n_th_cavity", "must be >= 0");
  if (m.dims.size() != 2) throw validation_error("simulation.dims", "expects [cavity, mechanics]");
  RwaModelSpec s;
  s.delta = m.delta;
  s.g0 = m.g0;
  s.alpha = m.alpha;
  s.omega_m = m.omega_m;
  s.pump_amplitude = m.pump;
  s.dims = m.dims;
  return LindbladModel(build_rwa(s), standard_channels(m.kappa, m.gamma_m, m.n_th_mech, m.n_th_cavity, m.dims),
                       ParametricDrive{m.alpha, m.kappa, m.delta});
}

ScaledModel scaled_from_device(const DeviceParameters& device, const HilbertDims& dims) {
  validate(device);
  const auto q = figures_of_merit(device);
  const auto& b = device.bias;
  double frame = q.renormalized_cavity_frequency;
  if (b.modulation_frequency > 0) {
    frame = b.modulation_frequency / 2.0;
    if (b.pump_amplitude != 0 && b.pump_frequency != frame)
      throw validation_error("bias.pump_frequency",
                             "must equal half the modulation frequency for a static rotating-frame model");
  } else if (b.pump_amplitude != 0 && b.pump_frequency > 0) {
    frame = b.pump_frequency;
  }
  const double s = q.kappa;
  ScaledModel m;
  m.kappa = 1.0;
  m.g0 = q.g0 / s;
  m.omega_m = q.mechanical_frequency / s;
  m.gamma_m = q.gamma_m / s;
  m.alpha = q.alpha / s;
  m.delta = (frame - q.renormalized_cavity_frequency) / s;
  m.pump = b.pump_amplitude / s;
  m.n_th_mech = thermal_occupation(q.mechanical_frequency, b.temperature);
  m.n_th_cavity = thermal_occupation(q.renormalized_cavity_frequency, b.temperature);
  m.dims = dims;
  m.frequency_scale = s;
  return m;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& derived_output_names() {
  static const std::vector<std::string> names = {
      "josephson_inductance", "plasma_frequency", "beta_l", "cavity_frequency",
      "zero_point_displacement", "g0", "alpha", "chi", "kappa", "gamma_m",
      "mechanical_frequency", "g0_over_kappa", "g0_over_omega_m", "nonlinearity_parameter"};
  return names;
}

double derived_output(const DerivedQuantities& q, const std::string& name) {
  if (name == "josephson_inductance") return q.josephson_inductance;
  if (name == "plasma_frequency") return hz(q.plasma_frequency);
  if (name == "beta_l") return q.beta_l;
  if (name == "cavity_frequency") return hz(q.renormalized_cavity_frequency);
  if (name == "zero_point_displacement") return q.zero_point_displacement;
  if (name == "g0") return hz(q.g0);
  if (name == "alpha") return hz(q.alpha);
  if (name == "chi") return hz(q.chi);
  if (name == "kappa") return hz(q.kappa);
  if (name == "gamma_m") return hz(q.gamma_m);
  if (name == "mechanical_frequency") return hz(q.mechanical_frequency);
  if (name == "g0_over_kappa") return q.g0_over_kappa();
  if (name == "g0_over_omega_m") return q.g0_over_omega_m();
  if (name == "nonlinearity_parameter") return q.nonlinearity_parameter;
  throw validation_error("scenario.outputs", "unknown output '" + name + "'");
}

namespace {

std::string_view output_unit(const std::string& name) {
  if (name == "josephson_inductance") return "H";
  if (name == "zero_point_displacement") return "m";
  if (name == "beta_l" || name == "g0_over_kappa" || name == "g0_over_omega_m" ||
      name == "nonlinearity_parameter")
    return "1";
  return "Hz";
}

ordered_json constraints_json(const ConstraintReport& c) {
  ordered_json j;
  j["current_ratio"] = c.current_ratio;
  j["current"] = to_string(c.current);
  j["inductance_ratio"] = c.inductance_ratio;
  j["inductance"] = to_string(c.inductance);
  j["flux_kick_ratio"] = c.flux_kick_ratio;
  j["flux_kick"] = to_string(c.flux_kick);
  j["field_ratio"] = c.field_ratio;
  j["field"] = to_string(c.field);
  j["worst"] = to_string(c.worst());
  return j;
}

ordered_json device_inputs(const DeviceParameters& device) {
  ordered_json in;
  in["device"] = device_to_json(device);
  return in;
}

}  // namespace

Report figures_report(const DeviceParameters& device, FrequencyMethod method) {
  validate(device);
  Report r;
  r.scenario = "fom";
  auto in = device_inputs(device);
  in["frequency_method"] = to_string(method);
  r.set_inputs(std::move(in));

  const auto q = figures_of_merit(device, method);
  const double T = device.bias.temperature;
  r.columns = {"quantity", "value", "unit"};
  for (const auto& name : derived_output_names()) {
    const double v = derived_output(q, name);
    r.rows.push_back({name, v, std::string(output_unit(name))});
    r.summary[name] = v;
  }
  const double nc = thermal_occupation(q.renormalized_cavity_frequency, T);
  const double nm = thermal_occupation(q.mechanical_frequency, T);
  r.rows.push_back({std::string("n_th_cavity"), nc, std::string("1")});
  r.rows.push_back({std::string("n_th_mechanics"), nm, std::string("1")});
  r.summary["n_th_cavity"] = nc;
  r.summary["n_th_mechanics"] = nm;

  const auto c = validate_regime(device, cavity_current_estimate(device));
  r.summary["constraints"] = constraints_json(c);
  r.provenance["frequency_method"] = to_string(method);
  r.provenance["frequency_units"] = "Hz (ordinary frequency)";
  r.provenance["cavity_current_estimate"] = "zero-point current scaled by sqrt(n + 1), n = 1";
  if (c.worst() != Verdict::ok) r.warnings.push_back("regime constraint not satisfied: worst verdict " +
                                                     std::string(to_string(c.worst())));
  return r;
}

Report regime_report(const DeviceParameters& device, double photon_number) {
  validate(device);
  if (!(photon_number >= 0)) throw validation_error("scenario.photon_number", "must be >= 0");
  Report r;
  r.scenario = "validate";
  auto in = device_inputs(device);
  in["photon_number"] = photon_number;
  r.set_inputs(std::move(in));

  const double current = cavity_current_estimate(device, photon_number);
  const auto c = validate_regime(device, current);
  r.columns = {"constraint", "ratio", "verdict"};
  r.rows.push_back({std::string("current"), c.current_ratio, std::string(to_string(c.current))});
  r.rows.push_back({std::string("inductance"), c.inductance_ratio, std::string(to_string(c.inductance))});
  r.rows.push_back({std::string("flux_kick"), c.flux_kick_ratio, std::string(to_string(c.flux_kick))});
  r.rows.push_back({std::string("field"), c.field_ratio, std::string(to_string(c.field))});
  r.summary = constraints_json(c);
  r.summary["cavity_current"] = current;
  r.provenance["thresholds"] = "ratio < 0.2 ok, <= 0.5 warning, else violation; field: B/B_c < 0.8 ok, < 1 warning";
  r.provenance["cavity_current_estimate"] = "zero-point current scaled by sqrt(n + 1)";
  for (const auto& row : r.rows)
    if (std::get<std::string>(row[2]) != "ok")
      r.warnings.push_back(std::get<std::string>(row[0]) + " constraint: " + std::get<std::string>(row[2]));
  return r;
}

Report wavenumber_report(const DeviceParameters& device, const std::vector<double>& cosines) {
  validate(device);
  if (cosines.empty()) throw validation_error("scenario.modulation_cosines", "must not be empty");
  Report r;
  r.scenario = "wavenumber";
  auto in = device_inputs(device);
  in["modulation_cosines"] = cosines;
  r.set_inputs(std::move(in));

  r.columns = {"modulation_cosine", "rhs",  "half_phase", "wavenumber", "residual", "small_argument_estimate",
               "small_argument_valid", "cavity_frequency", "error"};
  const double v = 1.0 / std::sqrt(device.cavity.inductance_per_length * device.cavity.capacitance_per_length);
  for (double c : cosines) {
    try {
      const auto s = solve_wavenumber(device, c);
      r.rows.push_back({c, s.rhs, s.half_phase, s.wavenumber, s.residual, s.small_argument_estimate,
                        std::string(s.small_argument_valid ? "true" : "false"), hz(s.wavenumber * v),
                        std::string()});
    } catch (const std::exception& e) {
      r.rows.push_back({c, nan, nan, nan, nan, nan, std::string("false"), nan, error_text(e)});
      r.warnings.push_back("cos = " + format_number(c) + ": " + e.what());
    }
  }
  r.provenance["root"] = "smallest positive root of x tan x = r, bisection then Newton";
  r.provenance["frequency_units"] = "Hz";
  return r;
}

Report platform_comparison(const DeviceParameters& device) {
  validate(device);
  Report r;
  r.scenario = "platforms";
  r.set_inputs(device_inputs(device));
  const auto q = figures_of_merit(device);
  r.columns = {"system", "g0_over_kappa", "g0_over_omega_m", "nonlinearity_parameter", "chi"};
  r.rows.push_back({std::string("This device"), q.g0_over_kappa(), q.g0_over_omega_m(), q.nonlinearity_parameter,
                    hz(q.chi)});
  for (const auto& ref : reference_systems())
    r.rows.push_back({std::string(ref.name), ref.g0_over_kappa, ref.g0_over_omega_m, ref.nonlinearity,
                      ref.chi_over_2pi_hz});
  r.summary["g0_over_kappa"] = q.g0_over_kappa();
  r.summary["g0_over_omega_m"] = q.g0_over_omega_m();
  r.summary["nonlinearity_parameter"] = q.nonlinearity_parameter;
  r.summary["chi"] = hz(q.chi);
  r.provenance["reference_rows"] = "static published comparison data; missing entries null";
  r.provenance["frequency_method"] = to_string(FrequencyMethod::table_scaling);
  return r;
}

Report sweep(const DeviceParameters& device, const SweepSpec& spec) {
  const auto& field = parameter_field(spec.parameter_path);
  if (spec.values.empty()) throw validation_error("scenario.values", "must not be empty");
  if (spec.outputs.empty()) throw validation_error("scenario.outputs", "at least one output is required");
  for (const auto& o : spec.outputs) {
    const auto& names = derived_output_names();
    if (std::find(names.begin(), names.end(), o) == names.end())
      throw validation_error("scenario.outputs", "unknown output '" + o + "'");
  }

  Report r;
  r.scenario = "sweep";
  auto in = device_inputs(device);
  in["parameter"] = spec.parameter_path;
  std::vector<double> io_values;
  for (double v : spec.values) io_values.push_back(v * field.io_scale());
  in["values"] = io_values;
  in["outputs"] = spec.outputs;
  r.set_inputs(std::move(in));

  r.columns = {spec.parameter_path};
  for (const auto& o : spec.outputs) r.columns.push_back(o);
  for (const char* c : {"current_verdict", "inductance_verdict", "flux_kick_verdict", "field_verdict",
                        "worst_verdict", "context_digest", "error"})
    r.columns.emplace_back(c);

  r.rows = parallel_map(spec.values.size(), [&](std::size_t i) {
    DeviceParameters d = device;
    field.set(d, spec.values[i]);
    std::vector<Cell> row{io_values[i]};
    std::vector<Cell> verdicts(5, std::string("n/a"));
    std::string error;
    try {
      const auto c = validate_regime(d, cavity_current_estimate(d));
      verdicts = {std::string(to_string(c.current)), std::string(to_string(c.inductance)),
                  std::string(to_string(c.flux_kick)), std::string(to_string(c.field)),
                  std::string(to_string(c.worst()))};
    } catch (const std::exception& e) {
      error = e.what();
    }
    try {
      validate(d);
      const auto q = figures_of_merit(d);
      for (const auto& o : spec.outputs) row.emplace_back(derived_output(q, o));
    } catch (const std::exception& e) {
      for (std::size_t k = 0; k < spec.outputs.size(); ++k) row.emplace_back(nan);
      if (error.empty()) error = e.what();
    }
    row.insert(row.end(), verdicts.begin(), verdicts.end());
    row.emplace_back(digest(device_to_json(d)));
    row.emplace_back(error);
    return row;
  });

  std::size_t failed = 0;
  for (const auto& row : r.rows)
    if (!std::get<std::string>(row.back()).empty()) ++failed;
  r.summary["points"] = r.rows.size();
  r.summary["failed_points"] = failed;
  r.provenance["parameter_unit"] = std::string(field.unit);
  r.provenance["frequency_units"] = "Hz";
  r.provenance["context_digest"] = "FNV-1a 64 of the full device block at each point";
  if (failed) r.warnings.push_back(std::to_string(failed) + " sweep point(s) failed; see error column");
  return r;
}

Report harmonic_census(const DeviceParameters& device, int max_harmonic) {
  validate(device);
  if (max_harmonic < 1) throw validation_error("scenario.max_harmonic", "must be >= 1");
  Report r;
  r.scenario = "harmonics";
  auto in = device_inputs(device);
  in["max_harmonic"] = max_harmonic;
  r.set_inputs(std::move(in));

  const auto q = figures_of_merit(device);
  r.columns = {"harmonic", "g0", "g0_times_n_to_3_2", "regime", "exceeds_kappa", "exceeds_gamma_m"};
  std::vector<int> over_kappa, over_gamma;
  for (const auto& h : harmonic_couplings(device, max_harmonic)) {
    const double n = h.harmonic;
    const bool k = h.g0 > q.kappa, g = h.g0 > q.gamma_m;
    if (k) over_kappa.push_back(h.harmonic);
    if (g) over_gamma.push_back(h.harmonic);
    r.rows.push_back({n, hz(h.g0), hz(h.g0 * n * std::sqrt(n)), std::string(to_string(h.regime)),
                      std::string(k ? "yes" : "no"), std::string(g ? "yes" : "no")});
  }
  // g0 n^{-3/2} decreases monotonically, so counting stops at the first failure
  auto unbounded = [&](double rate) {
    long count = 0;
    for (long n = 1; q.g0 * std::pow(double(n), -1.5) > rate && n < 100'000'000; n += 2) ++count;
    return count;
  };
  r.summary["qualifying_over_kappa"] = over_kappa;
  r.summary["count_over_kappa"] = over_kappa.size();
  r.summary["qualifying_over_gamma_m"] = over_gamma;
  r.summary["count_over_gamma_m"] = over_gamma.size();
  r.summary["count_over_kappa_unbounded"] = unbounded(q.kappa);
  r.summary["count_over_gamma_m_unbounded"] = unbounded(q.gamma_m);
  r.provenance["coupling_law"] = "g0(n) = g0 n^(-3/2), odd n";
  r.provenance["criteria"] = "g0(n) > kappa and g0(n) > gamma_m, side by side";
  r.provenance["frequency_units"] = "Hz";
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// (N, Re M, Im M, 1) generator of the two-moment equations, kappa = 1
Eigen::Matrix4d dpa_generator(double a, double d) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = -1.0;
  g(0, 2) = 2.0 * a;
  g(1, 1) = -1.0;
  g(1, 2) = -2.0 * d;
  g(2, 0) = 2.0 * a;
  g(2, 1) = 2.0 * d;
  g(2, 2) = -1.0;
  g(2, 3) = a;
  return g;
}

}  // namespace

DpaMoments dpa_moments(double a, double d, double t) {
  const Eigen::Matrix4d e = (dpa_generator(a, d) * t).exp();
  return {e(0, 3), cplx(e(1, 3), e(2, 3))};
}

DpaMoments dpa_steady_moments(double a, double d) {
  const double denom = 1.0 + 4.0 * d * d - 4.0 * a * a;
  if (!(denom > 0)) throw domain_error("parametric drive above threshold: no steady state");
  DpaMoments m;
  m.n = 2.0 * a * a / denom;
  m.m = cplx(0.0, a * (2.0 * m.n + 1.0)) / cplx(1.0, -2.0 * d);
  return m;
}

Report dce_photon_generation(const DceSpec& spec) {
  if (!(spec.alpha_over_kappa >= 0)) throw validation_error("scenario.alpha_over_kappa", "must be >= 0");
  if (!(spec.alpha_over_kappa < 0.5))
    throw validation_error("scenario.alpha_over_kappa", "must be < 0.5: parametric drive at or above threshold");
  if (spec.cavity_dim < 2) throw validation_error("scenario.cavity_dim", "must be >= 2");
  if (!(spec.horizon > 0)) throw validation_error("scenario.horizon", "must be > 0");

  Report r;
  r.scenario = "dce";
  ordered_json in;
  in["alpha_over_kappa"] = spec.alpha_over_kappa;
  in["delta_over_kappa"] = spec.delta_over_kappa;
  in["cavity_dim"] = spec.cavity_dim;
  in["horizon"] = spec.horizon;
  in["samples"] = spec.samples;
  in["ode"] = ode_json(spec.ode);
  r.set_inputs(std::move(in));

  ScaledModel m;
  m.kappa = 1.0;
  m.g0 = 0.0;
  m.omega_m = 1.0;
  m.gamma_m = 0.0;
  m.alpha = spec.alpha_over_kappa;
  m.delta = spec.delta_over_kappa;
  m.dims = HilbertDims{spec.cavity_dim, 2};
  const auto model = build_model(m);

  const auto a = embed(destroy(m.dims[0]), m.dims, 0);
  const auto ad = a.adjoint();
  EvolveOptions opts;
  opts.ode = spec.ode;
  opts.observables = {{"n", ad * a},
                      {"re_a2", 0.5 * (a * a + ad * ad)},
                      {"im_a2", cplx(0.0, -0.5) * (a * a - ad * ad)}};
  const auto times = linspace(0.0, spec.horizon, spec.samples);
  const auto res = evolve(model, basis_state(m.dims, {0, 0}), times, opts);

  r.columns = {"t", "n", "n_oracle", "abs_a2", "abs_a2_oracle"};
  const auto& n = res.series("n");
  const auto& re = res.series("re_a2");
  const auto& im = res.series("im_a2");
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto o = dpa_moments(m.alpha, m.delta, times[i]);
    r.rows.push_back({times[i], n[i], o.n, std::abs(cplx(re[i], im[i])), std::abs(o.m)});
  }
  const auto terminal = dpa_moments(m.alpha, m.delta, spec.horizon);
  const double nt = n.back();
  r.summary["terminal_n"] = nt;
  r.summary["terminal_n_oracle"] = terminal.n;
  r.summary["terminal_relative_error"] = terminal.n > 0 ? std::abs(nt - terminal.n) / terminal.n : std::abs(nt);
  r.summary["steady_n_oracle"] = dpa_steady_moments(m.alpha, m.delta).n;
  r.summary["final_state"] = state_json(res.final_state);
  r.summary["truncation"] = truncation_json(res.truncation);
  r.summary["ode_steps"] = res.stats.accepted;
  r.provenance = rotating_frame_provenance(1.0);
  r.provenance["model"] = to_json(m);
  r.provenance["integrator"] = ode_json(spec.ode);
  r.provenance["oracle"] = "two-moment equations for <a'a> and <a^2>, matrix exponential";
  r.warnings = res.warnings;
  if (spec.alpha_over_kappa > 0.4) r.warnings.push_back("parametric drive within 20% of threshold");
  return r;
}

Report sideband_demo(const SidebandSpec& spec) {
  if (spec.detunings_over_omega_m.empty())
    throw validation_error("scenario.detunings_over_omega_m", "must not be empty");
  if (!(spec.omega_m > 0)) throw validation_error("scenario.omega_m", "must be > 0");
  if (!(spec.n_th_mech >= 0)) throw validation_error("scenario.n_th_mech", "must be >= 0");
  if (!(spec.horizon > 0)) throw validation_error("scenario.horizon", "must be > 0");

  Report r;
  r.scenario = "sideband";
  ordered_json in;
  in["g0"] = spec.g0;
  in["omega_m"] = spec.omega_m;
  in["alpha"] = spec.alpha;
  in["gamma_m"] = spec.gamma_m;
  in["n_th_mech"] = spec.n_th_mech;
  in["detunings_over_omega_m"] = spec.detunings_over_omega_m;
  in["dims"] = dims_json(spec.dims);
  in["horizon"] = spec.horizon;
  in["samples"] = spec.samples;
  in["ode"] = ode_json(spec.ode);
  r.set_inputs(std::move(in));

  const auto times = linspace(0.0, spec.horizon, spec.samples);
  struct Run {
    ScaledModel model;
    SimulationResult result;
  };
  auto runs = parallel_map(spec.detunings_over_omega_m.size(), [&](std::size_t k) {
    ScaledModel m;
    m.kappa = 1.0;
    m.g0 = spec.g0;
    m.omega_m = spec.omega_m;
    m.gamma_m = spec.gamma_m;
    m.alpha = spec.alpha;
    m.delta = spec.detunings_over_omega_m[k] * spec.omega_m;
    m.n_th_mech = spec.n_th_mech;
    m.dims = spec.dims;
    const auto model = build_model(m);
    const auto initial = product_state({basis_state(HilbertDims{m.dims[0]}, {0}),
                                        thermal_state(m.dims[1], spec.n_th_mech)});
    EvolveOptions opts;
    opts.ode = spec.ode;
    opts.observables = {{"n_b", embed(number(m.dims[1]), m.dims, 1)}, {"n_a", embed(number(m.dims[0]), m.dims, 0)}};
    return Run{m, evolve(model, initial, times, opts)};
  });

  r.columns = {"detuning_over_omega_m", "t", "n_b", "n_a"};
  ordered_json jruns = ordered_json::array();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& res = runs[k].result;
    const auto& nb = res.series("n_b");
    const auto& na = res.series("n_a");
    for (std::size_t i = 0; i < times.size(); ++i)
      r.rows.push_back({spec.detunings_over_omega_m[k], times[i], nb[i], na[i]});
    ordered_json jr;
    jr["detuning_over_omega_m"] = spec.detunings_over_omega_m[k];
    jr["model"] = to_json(runs[k].model);
    jr["model_digest"] = digest(jr["model"]);
    jr["terminal_n_b"] = nb.back();
    jr["terminal_n_a"] = na.back();
    jr["final_state"] = state_json(res.final_state);
    jr["truncation"] = truncation_json(res.truncation);
    jruns.push_back(std::move(jr));
    for (const auto& w : res.warnings)
      r.warnings.push_back("detuning " + format_number(spec.detunings_over_omega_m[k]) + ": " + w);
  }
  r.summary["initial_n_b"] = runs.front().result.series("n_b").front();
  r.summary["runs"] = std::move(jruns);
  // mirrored pairs: (+) minus (-) terminal phonon number
  ordered_json pairs = ordered_json::array();
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = 0; j < runs.size(); ++j) {
      const double di = spec.detunings_over_omega_m[i], dj = spec.detunings_over_omega_m[j];
      if (di < 0 && dj == -di) {
        ordered_json p;
        p["detuning_over_omega_m"] = dj;
        p["heating_minus_cooling"] = runs[j].result.series("n_b").back() - runs[i].result.series("n_b").back();
        pairs.push_back(std::move(p));
      }
    }
  r.summary["pairs"] = std::move(pairs);
  r.provenance = rotating_frame_provenance(1.0);
  r.provenance["integrator"] = ode_json(spec.ode);
  r.provenance["initial_state"] = "cavity vacuum, thermal mechanics";
  return r;
}

Report blockade_scan(const BlockadeSpec& spec) {
  if (spec.g0_over_kappa.empty()) throw validation_error("scenario.g0_over_kappa", "must not be empty");
  if (!(spec.pump_over_kappa > 0 && spec.pump_over_kappa <= 0.1))
    throw validation_error("scenario.pump_over_kappa", "must lie in (0, 0.1]");
  if (!(spec.omega_m_over_kappa > 0)) throw validation_error("scenario.omega_m_over_kappa", "must be > 0");
  if (spec.ladder.size() < 2) throw validation_error("simulation.ladder", "needs at least two rungs");

  Report r;
  r.scenario = "blockade";
  ordered_json in;
  in["g0_over_kappa"] = spec.g0_over_kappa;
  in["omega_m_over_kappa"] = spec.omega_m_over_kappa;
  in["gamma_m_over_kappa"] = spec.gamma_m_over_kappa;
  in["pump_over_kappa"] = spec.pump_over_kappa;
  ordered_json ladder = ordered_json::array();
  for (const auto& d : spec.ladder) ladder.push_back(dims_json(d));
  in["ladder"] = ladder;
  in["tolerance"] = spec.tolerance;
  r.set_inputs(std::move(in));

  const NamedObservable g2{"g2", [](const QuantumState& s) { return g2_zero(s, 0); }};
  r.columns = {"g0_over_kappa", "g0_over_omega_m", "nonlinearity_parameter", "delta_over_kappa", "g2",
               "mean_photons", "dims", "residual", "state_valid", "error"};
  r.rows = parallel_map(spec.g0_over_kappa.size(), [&](std::size_t i) {
    const double g0 = spec.g0_over_kappa[i];
    const double wm = spec.omega_m_over_kappa;
    const double delta = -g0 * g0 / wm;
    auto build = [&](const HilbertDims& dims) {
      ScaledModel m;
      m.kappa = 1.0;
      m.g0 = g0;
      m.omega_m = wm;
      m.gamma_m = spec.gamma_m_over_kappa;
      m.delta = delta;
      m.pump = spec.pump_over_kappa;
      m.dims = dims;
      return build_model(m);
    };
    std::vector<Cell> row{g0, g0 / wm, g0 * g0 / wm, delta};
    try {
      const auto run = truncation_converge(build, spec.ladder, g2, spec.tolerance);
      row.insert(row.end(), {run.value, mean_number(run.result.state, 0), run.dims.str(), run.result.residual,
                             std::string(diagnose(run.result.state).valid() ? "true" : "false"), std::string()});
    } catch (const std::exception& e) {
      row.insert(row.end(), {nan, nan, std::string(), nan, std::string("n/a"), error_text(e)});
    }
    return row;
  });

  ordered_json crossing = nullptr;
  bool monotone = true;
  double prev = nan;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const double v = r.number(i, "g2");
    if (!r.text(i, "error").empty()) ++failed;
    if (crossing.is_null() && v < 1.0 - spec.tolerance) crossing = r.number(i, "nonlinearity_parameter");
    if (std::isfinite(prev) && std::isfinite(v) && v > prev) monotone = false;
    if (std::isfinite(v)) prev = v;
  }
  r.summary["first_nonlinearity_below_one"] = crossing;
  r.summary["g2_monotone_nonincreasing"] = monotone;
  r.summary["failed_points"] = failed;
  r.provenance = rotating_frame_provenance(1.0);
  r.provenance["detuning"] = "Delta = -g0^2/omega_m (polaron-shifted single-photon resonance)";
  r.provenance["relaxed_ratios"] = "omega_m/kappa held fixed across the scan; g0/omega_m varies";
  r.provenance["steady_state"] = "sparse LU on the trace-constrained Liouvillian, truncation ladder";
  if (failed) r.warnings.push_back(std::to_string(failed) + " scan point(s) did not converge; see error column");
  return r;
}

Report evolve_report(const EvolveSpec& spec) {
  if (!(spec.horizon > 0)) throw validation_error("scenario.horizon", "must be > 0");
  Report r;
  r.scenario = "evolve";
  ordered_json in;
  in["model"] = to_json(spec.model);
  in["cavity_amplitude"] = spec.cavity_amplitude;
  in["horizon"] = spec.horizon;
  in["samples"] = spec.samples;
  in["ode"] = ode_json(spec.ode);
  r.set_inputs(std::move(in));

  const auto& m = spec.model;
  const auto model = build_model(m);
  const auto initial = product_state({coherent_state(m.dims[0], spec.cavity_amplitude),
                                      thermal_state(m.dims[1], m.n_th_mech)});
  EvolveOptions opts;
  opts.ode = spec.ode;
  opts.observables = {{"n_a", embed(number(m.dims[0]), m.dims, 0)}, {"n_b", embed(number(m.dims[1]), m.dims, 1)}};
  const auto times = linspace(0.0, spec.horizon, spec.samples);
  const auto res = evolve(model, initial, times, opts);

  r.columns = {"t", "n_a", "n_b", "trace"};
  for (std::size_t i = 0; i < times.size(); ++i)
    r.rows.push_back({times[i], res.series("n_a")[i], res.series("n_b")[i], res.series("trace")[i]});
  r.summary["terminal_n_a"] = res.series("n_a").back();
  r.summary["terminal_n_b"] = res.series("n_b").back();
  r.summary["initial_discarded_weight"] = initial.discarded_weight;
  r.summary["final_state"] = state_json(res.final_state);
  r.summary["truncation"] = truncation_json(res.truncation);
  r.summary["ode_steps"] = res.stats.accepted;
  r.summary["ode_rejected"] = res.stats.rejected;
  r.provenance = rotating_frame_provenance(m.frequency_scale);
  r.provenance["integrator"] = ode_json(spec.ode);
  r.provenance["initial_state"] = "coherent cavity, thermal mechanics";
  r.warnings = res.warnings;
  return r;
}

namespace {

double optional_statistic(double (*f)(const QuantumState&, std::size_t), const QuantumState& s,
                          std::vector<std::string>& warnings) {
  try {
    return f(s, 0);
  } catch (const absent_photons_error& e) {
    warnings.emplace_back(e.what());
    return nan;
  }
}

}  // namespace

Report steady_report(const ScaledModel& m) {
  Report r;
  r.scenario = "steady";
  ordered_json in;
  in["model"] = to_json(m);
  r.set_inputs(std::move(in));

  const auto res = solve_steady_state(build_model(m));
  r.warnings = res.warnings;
  const double g2 = optional_statistic(g2_zero, res.state, r.warnings);
  const double f = optional_statistic(fano, res.state, r.warnings);
  r.columns = {"observable", "value"};
  const std::vector<std::pair<std::string, double>> values = {
      {"n_a", mean_number(res.state, 0)}, {"n_b", mean_number(res.state, 1)}, {"g2", g2},
      {"fano", f},                        {"purity", purity(res.state)},      {"residual", res.residual}};
  for (const auto& [k, v] : values) {
    r.rows.push_back({k, v});
    r.summary[k] = v;
  }
  r.summary["method"] = res.method;
  r.summary["state"] = state_json(res.state);
  r.summary["truncation"] = truncation_json(res.truncation);
  r.provenance = rotating_frame_provenance(m.frequency_scale);
  r.provenance["steady_state"] = res.method + " on the Liouvillian with the trace row";
  return r;
}

Report wigner_report(const WignerSpec& spec) {
  Report r;
  r.scenario = "wigner";
  ordered_json in;
  in["model"] = to_json(spec.model);
  const auto& g = spec.grid;
  in["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
                {"p_min", g.p_min}, {"p_max", g.p_max}, {"np", g.np}};
  r.set_inputs(std::move(in));

  const auto res = solve_steady_state(build_model(spec.model));
  const auto w = wigner(res.state, 0, g);
  r.columns = {"x", "p", "W"};
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.np; ++j) r.rows.push_back({w.xs[i], w.ps[j], w.values(i, j)});
  r.summary["integral"] = w.integral;
  r.summary["min_W"] = w.values.minCoeff();
  r.summary["max_W"] = w.values.maxCoeff();
  r.summary["max_series_error"] = w.max_series_error;
  r.summary["coverage_ok"] = w.coverage_ok;
  r.summary["state"] = state_json(res.state);
  r.summary["truncation"] = truncation_json(res.truncation);
  r.provenance = rotating_frame_provenance(spec.model.frequency_scale);
  r.provenance["convention"] = "x = (a + a')/sqrt(2), integral of W over the plane = 1";
  r.provenance["method"] = "displaced parity series";
  r.warnings = res.warnings;
  if (!w.coverage_ok) r.warnings.push_back(w.warning);
  return r;
}

}  // namespace squidom
