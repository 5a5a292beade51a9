#pragma once

// Circuit model of a flux-biased dc-SQUID with a mechanically compliant arm
// embedded at the centre of a coplanar microwave cavity. All quantities are SI;
// frequencies are angular (rad/s).

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace squidom {

struct SquidParameters {
  double critical_current = 100e-9;      // I_c [A]
  double junction_capacitance = 10e-15;  // C_J [F]
  double loop_self_inductance = 10e-12;  // L [H]
  double junction_asymmetry = 0.0;       // reserved, must be 0
};

struct CavityParameters {
  double inductance_per_length = 4e-7;                // L_c [H/m]
  double capacitance_per_length = 2.036003836831258e-10;  // C_c [F/m]
  double length = 2.5e-3;                             // l [m]
  double bare_frequency_at_zero_bias = 6.283185307179586e10;  // omega_c(0) [rad/s]
  double quality_factor = 5e4;
};

struct MechanicalParameters {
  double mass = 1e-16;                       // m [kg]
  double frequency = 6.283185307179586e7;    // omega_m [rad/s]
  double oscillator_length = 10e-6;          // l_osc [m]
  double geometric_factor = 0.6366197723675814;  // lambda = 2/pi
  double quality_factor = 1e4;
};

struct BiasParameters {
  double dc_flux_fraction = 0.35;             // Phi_dc / Phi_0
  double modulation_amplitude_fraction = 0.0; // dPhi / Phi_0
  double modulation_frequency = 0.0;          // omega_d [rad/s]
  double external_field = 0.04;               // B_ext [T]
  double pump_amplitude = 0.0;                // E [rad/s]
  double pump_frequency = 0.0;                // omega_p [rad/s]
  double temperature = 0.01;                  // T [K]
};

/// Full physical description. Default-constructed values are the reference
/// niobium device (B_c = 198 mT) used throughout the tests and shipped configs.
struct DeviceParameters {
  SquidParameters squid;
  CavityParameters cavity;
  MechanicalParameters mechanical;
  BiasParameters bias;
  double material_critical_field = 0.198;  // B_c [T]
};

/// Throws validation_error naming the first violated field invariant.
void validate(const DeviceParameters& device);

// ---------------------------------------------------------------------------
// SQUID circuit quantities

/// Current-independent SQUID inductance L_J = Phi_0/(4 pi I_c) sec(pi f).
/// Throws domain_error within 1e-6 of the half-integer flux point.
double josephson_inductance(const SquidParameters& squid, double dc_flux_fraction);

/// Bare junction plasma frequency sqrt(2 pi I_c / (C_J Phi_0)).
double plasma_frequency(const SquidParameters& squid);
/// Flux-renormalized plasma frequency, bare value times sqrt(cos(pi f)).
double plasma_frequency(const SquidParameters& squid, double dc_flux_fraction);

double beta_l(const SquidParameters& squid);

/// sec(pi f) and tan(pi f) sharing the half-integer pole guard.
double flux_secant(double dc_flux_fraction);
double flux_tangent(double dc_flux_fraction);

// ---------------------------------------------------------------------------
// Regime constraints

enum class Verdict { ok, warning, violation };
std::string_view to_string(Verdict v);

struct ConstraintReport {
  double current_ratio = 0.0;     // |I/I_c sec(pi f)|
  double inductance_ratio = 0.0;  // |beta_L sec(pi f)|
  double flux_kick_ratio = 0.0;   // |lambda B l_osc y_zp / Phi_0|
  double field_ratio = 0.0;       // B_ext / B_c
  Verdict current = Verdict::ok;
  Verdict inductance = Verdict::ok;
  Verdict flux_kick = Verdict::ok;
  Verdict field = Verdict::ok;

  Verdict worst() const;
};

/// Verdict for a "much less than one" ratio: < 0.2 ok, <= 0.5 warning.
Verdict small_ratio_verdict(double ratio);
/// Verdict for B_ext/B_c: < 0.8 ok, < 1 warning, otherwise violation.
Verdict field_verdict(double ratio);

/// Zero-point current of the cavity mode at the SQUID, sqrt(hbar omega_c / (L_c l)),
/// scaled by sqrt(photon_number + 1).
double cavity_current_estimate(const DeviceParameters& device, double photon_number = 1.0);

/// Evaluates all regime ratios. Violations are reported, never thrown.
ConstraintReport validate_regime(const DeviceParameters& device, double cavity_current);

// ---------------------------------------------------------------------------
// Cavity mode

struct WavenumberSolution {
  double rhs = 0.0;                 // r = (L_c l / L_J)[1 - (pi dPhi/Phi_0) tan(pi f) cos]
  double half_phase = 0.0;          // x = k0 l / 2
  double wavenumber = 0.0;          // k0 [1/m]
  double residual = 0.0;            // |x tan x - r|
  double small_argument_estimate = 0.0;  // sqrt(r)
  bool small_argument_valid = false;     // r <= 1/2
};

/// Smallest positive root of the flux boundary condition for the given value
/// of cos(omega_d t). Throws domain_error when r <= 0.
WavenumberSolution solve_wavenumber(const DeviceParameters& device, double modulation_cosine);

enum class FrequencyMethod { table_scaling, mode_equation };
std::string_view to_string(FrequencyMethod m);

/// omega_c^dc. table_scaling: omega_c(0) cos(pi f). mode_equation: k0 / sqrt(L_c C_c)
/// with the modulation switched off.
double renormalized_cavity_frequency(const DeviceParameters& device,
                                     FrequencyMethod method = FrequencyMethod::table_scaling);

// ---------------------------------------------------------------------------
// Couplings

double zero_point_displacement(const MechanicalParameters& mech);

/// Single-photon radiation-pressure coupling g0 [rad/s].
double optomechanical_coupling(const DeviceParameters& device);

struct ParametricCoupling {
  double alpha = 0.0;  // modulation-driven degenerate parametric coupling
  double chi = 0.0;    // intrinsic coupling omega_c^dc / 4
};
ParametricCoupling parametric_coupling(const DeviceParameters& device);

struct DerivedQuantities {
  double josephson_inductance = 0.0;
  double plasma_frequency = 0.0;
  double beta_l = 0.0;
  double renormalized_cavity_frequency = 0.0;
  double zero_point_displacement = 0.0;
  double g0 = 0.0;
  double alpha = 0.0;
  double chi = 0.0;
  double kappa = 0.0;
  double gamma_m = 0.0;
  double mechanical_frequency = 0.0;
  double nonlinearity_parameter = 0.0;  // g0^2 / (kappa omega_m)

  double g0_over_kappa() const { return g0 / kappa; }
  double g0_over_omega_m() const { return g0 / mechanical_frequency; }
};

DerivedQuantities figures_of_merit(const DeviceParameters& device,
                                   FrequencyMethod method = FrequencyMethod::table_scaling);

/// One row of the published comparison of optomechanical platforms.
/// Missing entries are NaN.
struct ReferenceSystem {
  std::string_view name;
  double g0_over_kappa;
  double g0_over_omega_m;
  double nonlinearity;
  double chi_over_2pi_hz;
};
const std::vector<ReferenceSystem>& reference_systems();

// ---------------------------------------------------------------------------
// Mechanical harmonics and thermal occupation

enum class CouplingRegime { ultra_strong, strong, weak };
std::string_view to_string(CouplingRegime r);

struct HarmonicCoupling {
  int harmonic = 1;  // odd
  double g0 = 0.0;   // g0 n^{-3/2}
  CouplingRegime regime = CouplingRegime::weak;
};

/// Odd harmonics n <= max_harmonic, strictly decreasing in coupling.
std::vector<HarmonicCoupling> harmonic_couplings(const DeviceParameters& device, int max_harmonic);

/// Bose-Einstein occupation 1/(exp(hbar omega / k_B T) - 1); zero at T = 0.
double thermal_occupation(double frequency, double temperature);

}  // namespace squidom
