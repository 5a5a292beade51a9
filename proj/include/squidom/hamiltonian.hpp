#pragma once

// Hamiltonian builders. hbar is absorbed: every operator is in angular
// frequency units divided by a caller-chosen frequency scale.

#include <vector>

#include "squidom/device_model.hpp"
#include "squidom/fock.hpp"

namespace squidom {

struct CosinePart {
  QuantumOperator op;
  double frequency = 0.0;  // rad per unit time
  double phase = 0.0;
};

/// H(t) = static + sum_i op_i cos(frequency_i t + phase_i)
struct PeriodicHamiltonian {
  QuantumOperator static_part;
  std::vector<CosinePart> cosine_parts;

  QuantumOperator at(double t) const;
  /// Largest drive frequency, zero for a static Hamiltonian.
  double fastest_frequency() const;
};

/// Lab-frame model parameters (cavity first, mechanics second).
struct LabFrameSpec {
  double omega_c = 0.0;
  double omega_m = 0.0;
  double g0 = 0.0;
  double alpha = 0.0;
  double omega_d = 0.0;
  double pump_amplitude = 0.0;
  double omega_p = 0.0;
  HilbertDims dims;
  double frequency_scale = 1.0;
};

/// Lab-frame Hamiltonian
///   omega_c a'a + omega_m b'b - (g0/2)(a+a')^2 (b+b')
///   - alpha cos(omega_d t) (a+a')^2 + E (a e^{i omega_p t} + h.c.)
/// The (a+a')^2 optomechanical product is kept whole, vacuum term included.
/// The pump contributes two quadrature parts at omega_p.
PeriodicHamiltonian build_lab_frame(const LabFrameSpec& spec);
/// Device overload; frequency_scale defaults to omega_m.
PeriodicHamiltonian build_lab_frame(const DeviceParameters& device, const HilbertDims& dims,
                                    double frequency_scale = 0.0);

struct RwaModelSpec {
  double delta = 0.0;        // omega_d/2 - omega_c^dc
  double small_delta = 0.0;  // omega_d/2 - omega_p
  double g0 = 0.0;
  double alpha = 0.0;
  double omega_m = 0.0;
  double pump_amplitude = 0.0;
  HilbertDims dims;
  double frequency_scale = 1.0;
};

/// Spec from device parameters with frequency_scale = omega_m.
RwaModelSpec rwa_spec_from_device(const DeviceParameters& device, const HilbertDims& dims);

/// Rotating-frame Hamiltonian
///   -Delta a'a + omega_m b'b - (alpha/2)(a^2 + a'^2) - g0 a'a (b + b') + E (a + a')
/// Requires small_delta == 0; use build_rwa_periodic otherwise.
QuantumOperator build_rwa(const RwaModelSpec& spec);
/// Same model with the pump term E(a e^{-i delta t} + a' e^{i delta t}) as cosine parts.
PeriodicHamiltonian build_rwa_periodic(const RwaModelSpec& spec);

enum class TwoModeKind { nondegenerate, beam_splitter };

struct TwoModeSpec {
  double delta_a = 0.0;
  double delta_c = 0.0;
  double omega_m = 0.0;
  double g0_a = 0.0;
  double g0_c = 0.0;
  TwoModeKind kind = TwoModeKind::nondegenerate;
  double strength = 0.0;
  HilbertDims dims;  // [N_a, N_c, N_m]
  double frequency_scale = 1.0;
};

/// Two cavity modes a, c radiation-pressure coupled to mechanics b, plus
/// strength (a c + a' c') [nondegenerate] or strength (a c' + a' c) [beam splitter].
QuantumOperator build_two_mode(const TwoModeSpec& spec);
/// Device overload: both modes resonant, equal g0, frequency_scale = omega_m.
QuantumOperator build_two_mode(const DeviceParameters& device, const HilbertDims& dims,
                               TwoModeKind kind, double strength);

}  // namespace squidom
