#include "squidom/device_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "squidom/constants.hpp"
#include "squidom/errors.hpp"
#include "squidom/roots.hpp"

namespace squidom {

namespace {

constexpr double pole_margin = 1e-6;

double pi_flux(double f) {
  if (!std::isfinite(f) || std::abs(f) >= 0.5 - pole_margin)
    throw domain_error("flux fraction must satisfy |Phi_dc/Phi_0| < 0.5 (half-integer point excluded)");
  return std::numbers::pi * f;
}

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw validation_error(field, what);
}

}  // namespace

void validate(const DeviceParameters& d) {
  require(d.squid.critical_current > 0, "squid.critical_current", "must be > 0");
  require(d.squid.junction_capacitance > 0, "squid.junction_capacitance", "must be > 0");
  require(d.squid.loop_self_inductance >= 0, "squid.loop_self_inductance", "must be >= 0");
  require(d.squid.junction_asymmetry == 0, "squid.junction_asymmetry", "only symmetric junctions are supported (0)");

  require(d.cavity.inductance_per_length > 0, "cavity.inductance_per_length", "must be > 0");
  require(d.cavity.capacitance_per_length > 0, "cavity.capacitance_per_length", "must be > 0");
  require(d.cavity.length > 0, "cavity.length", "must be > 0");
  require(d.cavity.bare_frequency_at_zero_bias > 0, "cavity.bare_frequency_at_zero_bias", "must be > 0");
  require(d.cavity.quality_factor > 0, "cavity.quality_factor", "must be > 0");

  require(d.mechanical.mass > 0, "mechanical.mass", "must be > 0");
  require(d.mechanical.frequency > 0, "mechanical.frequency", "must be > 0");
  require(d.mechanical.oscillator_length > 0, "mechanical.oscillator_length", "must be > 0");
  require(d.mechanical.geometric_factor > 0 && d.mechanical.geometric_factor <= 1,
          "mechanical.geometric_factor", "must lie in (0, 1]");
  require(d.mechanical.quality_factor > 0, "mechanical.quality_factor", "must be > 0");

  require(std::abs(d.bias.dc_flux_fraction) < 0.5 - pole_margin, "bias.dc_flux_fraction",
          "must satisfy |Phi_dc/Phi_0| < 0.5 (half-integer flux point excluded)");
  require(d.bias.modulation_amplitude_fraction >= 0, "bias.modulation_amplitude_fraction", "must be >= 0");
  require(d.bias.modulation_frequency >= 0, "bias.modulation_frequency", "must be >= 0");
  require(d.bias.pump_frequency >= 0, "bias.pump_frequency", "must be >= 0");
  require(d.bias.temperature >= 0, "bias.temperature", "must be >= 0");
  require(d.material_critical_field > 0, "material_critical_field", "must be > 0");
  require(d.bias.external_field < d.material_critical_field, "bias.external_field",
          "must be below material_critical_field");
}

double flux_secant(double f) { return 1.0 / std::cos(pi_flux(f)); }

double flux_tangent(double f) {
  const double x = pi_flux(f);
  return std::sin(x) / std::cos(x);
}

double josephson_inductance(const SquidParameters& squid, double dc_flux_fraction) {
  return constants::flux_quantum / (4.0 * std::numbers::pi * squid.critical_current) *
         flux_secant(dc_flux_fraction);
}

double plasma_frequency(const SquidParameters& squid) {
  return std::sqrt(constants::two_pi * squid.critical_current /
                   (squid.junction_capacitance * constants::flux_quantum));
}

double plasma_frequency(const SquidParameters& squid, double dc_flux_fraction) {
  return plasma_frequency(squid) * std::sqrt(1.0 / flux_secant(dc_flux_fraction));
}

double beta_l(const SquidParameters& squid) {
  return constants::two_pi * squid.loop_self_inductance * squid.critical_current /
         constants::flux_quantum;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ok: return "ok";
    case Verdict::warning: return "warning";
    case Verdict::violation: return "violation";
  }
  return "?";
}

Verdict ConstraintReport::worst() const {
  Verdict w = Verdict::ok;
  for (Verdict v : {current, inductance, flux_kick, field})
    if (static_cast<int>(v) > static_cast<int>(w)) w = v;
  return w;
}

Verdict small_ratio_verdict(double ratio) {
  if (!(ratio <= 0.5)) return Verdict::violation;
  return ratio < 0.2 ? Verdict::ok : Verdict::warning;
}

Verdict field_verdict(double ratio) {
  if (!(ratio < 1.0)) return Verdict::violation;
  return ratio < 0.8 ? Verdict::ok : Verdict::warning;
}

double cavity_current_estimate(const DeviceParameters& device, double photon_number) {
  const double omega = renormalized_cavity_frequency(device);
  const double total_inductance = device.cavity.inductance_per_length * device.cavity.length;
  return std::sqrt(constants::hbar * omega / total_inductance) * std::sqrt(photon_number + 1.0);
}

ConstraintReport validate_regime(const DeviceParameters& device, double cavity_current) {
  if (!(cavity_current >= 0)) throw domain_error("cavity current estimate must be >= 0");
  const double sec = flux_secant(device.bias.dc_flux_fraction);
  const auto& mech = device.mechanical;

  ConstraintReport r;
  r.current_ratio = std::abs(cavity_current / device.squid.critical_current * sec);
  r.inductance_ratio = std::abs(beta_l(device.squid) * sec);
  r.flux_kick_ratio = std::abs(mech.geometric_factor * device.bias.external_field *
                               mech.oscillator_length * zero_point_displacement(mech) /
                               constants::flux_quantum);
  r.field_ratio = device.bias.external_field / device.material_critical_field;
  r.current = small_ratio_verdict(r.current_ratio);
  r.inductance = small_ratio_verdict(r.inductance_ratio);
  r.flux_kick = small_ratio_verdict(r.flux_kick_ratio);
  r.field = field_verdict(r.field_ratio);
  return r;
}

WavenumberSolution solve_wavenumber(const DeviceParameters& device, double modulation_cosine) {
  if (!(modulation_cosine >= -1.0 && modulation_cosine <= 1.0))
    throw domain_error("modulation cosine must lie in [-1, 1]");
  const auto& cav = device.cavity;
  const double f = device.bias.dc_flux_fraction;
  const double depth = std::numbers::pi * device.bias.modulation_amplitude_fraction * flux_tangent(f);

  WavenumberSolution s;
  s.rhs = cav.inductance_per_length * cav.length / josephson_inductance(device.squid, f) *
          (1.0 - depth * modulation_cosine);
  if (!(s.rhs > 0))
    throw domain_error("flux boundary condition has no principal root: right-hand side r <= 0");
  s.half_phase = solve_x_tan_x(s.rhs);
  s.wavenumber = 2.0 * s.half_phase / cav.length;
  s.residual = std::abs(s.half_phase * std::tan(s.half_phase) - s.rhs);
  s.small_argument_estimate = std::sqrt(s.rhs);
  s.small_argument_valid = s.rhs <= 0.5;
  return s;
}

std::string_view to_string(FrequencyMethod m) {
  return m == FrequencyMethod::table_scaling ? "table_scaling" : "mode_equation";
}

double renormalized_cavity_frequency(const DeviceParameters& device, FrequencyMethod method) {
  if (method == FrequencyMethod::table_scaling)
    return device.cavity.bare_frequency_at_zero_bias / flux_secant(device.bias.dc_flux_fraction);

  DeviceParameters unmodulated = device;
  unmodulated.bias.modulation_amplitude_fraction = 0.0;
  const double k0 = solve_wavenumber(unmodulated, 0.0).wavenumber;
  return k0 / std::sqrt(device.cavity.inductance_per_length * device.cavity.capacitance_per_length);
}

double zero_point_displacement(const MechanicalParameters& mech) {
  return std::sqrt(constants::hbar / (2.0 * mech.mass * mech.frequency));
}

double optomechanical_coupling(const DeviceParameters& device) {
  const auto& mech = device.mechanical;
  const double f = device.bias.dc_flux_fraction;
  const double flux_kick = mech.geometric_factor * device.bias.external_field *
                           mech.oscillator_length * zero_point_displacement(mech) /
                           (constants::flux_quantum / std::numbers::pi);
  const double participation = josephson_inductance(device.squid, f) /
                               (device.cavity.inductance_per_length * device.cavity.length);
  return renormalized_cavity_frequency(device) * flux_kick * participation * flux_tangent(f);
}

ParametricCoupling parametric_coupling(const DeviceParameters& device) {
  ParametricCoupling p;
  p.chi = renormalized_cavity_frequency(device) / 4.0;
  p.alpha = p.chi * (std::numbers::pi * device.bias.modulation_amplitude_fraction) *
            flux_tangent(device.bias.dc_flux_fraction);
  return p;
}

DerivedQuantities figures_of_merit(const DeviceParameters& device, FrequencyMethod method) {
  DerivedQuantities q;
  const double f = device.bias.dc_flux_fraction;
  q.josephson_inductance = josephson_inductance(device.squid, f);
  q.plasma_frequency = plasma_frequency(device.squid, f);
  q.beta_l = beta_l(device.squid);
  q.renormalized_cavity_frequency = renormalized_cavity_frequency(device);
  q.zero_point_displacement = zero_point_displacement(device.mechanical);
  q.g0 = optomechanical_coupling(device);
  const auto pc = parametric_coupling(device);
  q.alpha = pc.alpha;
  q.chi = pc.chi;
  q.kappa = q.renormalized_cavity_frequency / device.cavity.quality_factor;
  q.mechanical_frequency = device.mechanical.frequency;
  q.gamma_m = device.mechanical.frequency / device.mechanical.quality_factor;
  if (method != FrequencyMethod::table_scaling) {
    // g0, alpha, chi and kappa are all proportional to omega_c^dc
    const double wc = renormalized_cavity_frequency(device, method);
    const double s = wc / q.renormalized_cavity_frequency;
    q.renormalized_cavity_frequency = wc;
    q.g0 *= s;
    q.alpha *= s;
    q.chi *= s;
    q.kappa *= s;
  }
  q.nonlinearity_parameter = q.g0 * q.g0 / (q.kappa * q.mechanical_frequency);
  return q;
}

const std::vector<ReferenceSystem>& reference_systems() {
  constexpr double na = std::numeric_limits<double>::quiet_NaN();
  static const std::vector<ReferenceSystem> rows = {
      {"Microwave LC-drum", 6e-4, 2e-5, 1e-8, na},
      {"Si zipper cavity", 2e-4, 3e-2, 6e-6, na},
      {"Circuit-QED qubit", 4e-2, 2e-2, 8e-4, na},
      {"cCPT - resonator", 10.0, 1.0, 10.0, na},
      {"Stripline - cantilever", 20.0, na, na, na},
      {"Si3N4 WGR", 2e-4, 2e-5, 4e-9, 110.0},
      {"SQUID - resonator", 13.0, 0.1, 1.3, 1e9},
  };
  return rows;
}

std::string_view to_string(CouplingRegime r) {
  switch (r) {
    case CouplingRegime::ultra_strong: return "ultra_strong";
    case CouplingRegime::strong: return "strong";
    case CouplingRegime::weak: return "weak";
  }
  return "?";
}

std::vector<HarmonicCoupling> harmonic_couplings(const DeviceParameters& device, int max_harmonic) {
  if (max_harmonic < 1) throw domain_error("max_harmonic must be >= 1");
  const auto q = figures_of_merit(device);
  std::vector<HarmonicCoupling> out;
  for (int n = 1; n <= max_harmonic; n += 2) {
    HarmonicCoupling h;
    h.harmonic = n;
    h.g0 = q.g0 * std::pow(static_cast<double>(n), -1.5);
    const double mech_freq = n * q.mechanical_frequency;
    if (h.g0 * h.g0 / (q.kappa * mech_freq) > 1.0)
      h.regime = CouplingRegime::ultra_strong;
    else if (h.g0 > std::max(q.kappa, q.gamma_m))
      h.regime = CouplingRegime::strong;
    else
      h.regime = CouplingRegime::weak;
    out.push_back(h);
  }
  return out;
}

double thermal_occupation(double frequency, double temperature) {
  if (!(frequency > 0)) throw domain_error("thermal occupation requires frequency > 0");
  if (!(temperature >= 0)) throw domain_error("thermal occupation requires temperature >= 0");
  if (temperature == 0) return 0.0;
  const double x = constants::hbar * frequency / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

}  // namespace squidom
