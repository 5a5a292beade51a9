#pragma once

// Scenario drivers. Every driver returns a Report whose rows are a pure
// function of `Report::inputs`.
//
// Time-domain and steady-state scenarios run on a scaled rotating-frame model:
// all rates are divided by a frequency scale (kappa unless stated otherwise),
// which leaves the dimensionless ratios g0/kappa, g0/omega_m, alpha/kappa and
// Delta/omega_m untouched.

#include <json.hpp>

#include <string>
#include <vector>

#include "squidom/device_model.hpp"
#include "squidom/lindblad.hpp"
#include "squidom/observables.hpp"
#include "squidom/report.hpp"

namespace squidom {

/// Rotating-frame model in units of `frequency_scale` (rad/s per unit).
struct ScaledModel {
  double kappa = 1.0;
  double g0 = 13.0;
  double omega_m = 130.0;
  double gamma_m = 0.013;
  double alpha = 0.0;
  double delta = 0.0;
  double pump = 0.0;  // E
  double n_th_mech = 0.0;
  double n_th_cavity = 0.0;
  HilbertDims dims{6, 10};
  double frequency_scale = 1.0;
};

nlohmann::ordered_json to_json(const ScaledModel& m);

/// Static RWA Lindblad model with the parametric stability reference attached.
LindbladModel build_model(const ScaledModel& m);

/// Scales device rates by kappa. Delta = omega_d/2 - omega_c^dc when a
/// modulation frequency is set, otherwise 0 (frame at the cavity).
ScaledModel scaled_from_device(const DeviceParameters& device, const HilbertDims& dims);

// ---------------------------------------------------------------------------
// Device-level reports (no dynamics)

Report figures_report(const DeviceParameters& device, FrequencyMethod method = FrequencyMethod::table_scaling);
Report regime_report(const DeviceParameters& device, double photon_number = 1.0);
Report wavenumber_report(const DeviceParameters& device, const std::vector<double>& modulation_cosines);
Report platform_comparison(const DeviceParameters& device);

/// Derived-quantity names accepted by sweeps. Frequencies are reported in Hz.
const std::vector<std::string>& derived_output_names();
double derived_output(const DerivedQuantities& q, const std::string& name);

struct SweepSpec {
  std::string parameter_path;
  std::vector<double> values;  // internal (SI, rad/s) units
  std::vector<std::string> outputs;
};

/// One row per value in input order. A failing point records its error in
/// the "error" column and leaves its outputs NaN.
Report sweep(const DeviceParameters& device, const SweepSpec& spec);

Report harmonic_census(const DeviceParameters& device, int max_harmonic = 13);

// ---------------------------------------------------------------------------
// Dynamics

struct DceSpec {
  double alpha_over_kappa = 0.25;
  double delta_over_kappa = 0.0;
  int cavity_dim = 40;
  double horizon = 10.0;  // units of 1/kappa
  int samples = 101;
  OdeOptions ode;
};

/// Two-moment (<a'a>, <a^2>) closed form of the parametric cavity with decay,
/// started from vacuum, at time t (units of 1/kappa).
struct DpaMoments {
  double n = 0.0;
  cplx m{0.0, 0.0};
};
DpaMoments dpa_moments(double alpha_over_kappa, double delta_over_kappa, double t);
DpaMoments dpa_steady_moments(double alpha_over_kappa, double delta_over_kappa);

/// Photon generation from vacuum under the parametric term, compared against
/// the moment equations. Refuses alpha/kappa >= 0.5.
Report dce_photon_generation(const DceSpec& spec);

struct SidebandSpec {
  double g0 = 1.0;
  double omega_m = 10.0;
  double alpha = 0.1;
  double gamma_m = 1e-3;
  double n_th_mech = 1.0;
  std::vector<double> detunings_over_omega_m{-0.5, 0.5};
  HilbertDims dims{6, 14};
  double horizon = 10.0;
  int samples = 51;
  OdeOptions ode;
};

/// Phonon-number trajectories from a thermal mechanical state, one run per
/// detuning, all else equal. Rows are long-format (detuning, t, ...).
Report sideband_demo(const SidebandSpec& spec);

struct BlockadeSpec {
  std::vector<double> g0_over_kappa{0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 13.0};
  double omega_m_over_kappa = 130.0;
  double gamma_m_over_kappa = 0.013;
  double pump_over_kappa = 0.05;
  std::vector<HilbertDims> ladder{HilbertDims{4, 6}, HilbertDims{5, 8}, HilbertDims{6, 10},
                                  HilbertDims{8, 12}, HilbertDims{10, 16}};
  double tolerance = 1e-4;
};

/// Steady g2(0) at the polaron-shifted single-photon resonance
/// Delta = -g0^2/omega_m for each g0.
Report blockade_scan(const BlockadeSpec& spec);

struct EvolveSpec {
  ScaledModel model;
  double cavity_amplitude = 0.0;  // coherent initial cavity state
  double horizon = 10.0;
  int samples = 101;
  OdeOptions ode;
};
Report evolve_report(const EvolveSpec& spec);

Report steady_report(const ScaledModel& model);

struct WignerSpec {
  ScaledModel model;
  PhaseSpaceGrid grid{-4, 4, 41, -4, 4, 41};
};
/// Wigner function of the cavity in the steady state of `model`.
Report wigner_report(const WignerSpec& spec);

}  // namespace squidom
