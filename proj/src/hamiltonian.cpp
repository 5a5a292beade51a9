#include "squidom/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace squidom {

namespace {

constexpr cplx I{0.0, 1.0};

struct ModeOps {
  QuantumOperator a, b;
};

ModeOps cavity_mechanics_ops(const HilbertDims& dims) {
  if (dims.size() != 2)
    throw domain_error("cavity-mechanics model needs exactly two subsystems, got " + dims.str());
  return {embed(destroy(dims[0]), dims, 0), embed(destroy(dims[1]), dims, 1)};
}

void check_scale(double s) {
  if (!(s > 0)) throw domain_error("frequency_scale must be > 0");
}

}  // namespace

QuantumOperator PeriodicHamiltonian::at(double t) const {
  QuantumOperator h = static_part;
  for (const auto& p : cosine_parts) h += std::cos(p.frequency * t + p.phase) * p.op;
  return h;
}

double PeriodicHamiltonian::fastest_frequency() const {
  double w = 0.0;
  for (const auto& p : cosine_parts) w = std::max(w, std::abs(p.frequency));
  return w;
}

PeriodicHamiltonian build_lab_frame(const LabFrameSpec& s) {
  check_scale(s.frequency_scale);
  const auto [a, b] = cavity_mechanics_ops(s.dims);
  const double k = 1.0 / s.frequency_scale;
  const auto ad = a.adjoint();
  const auto bd = b.adjoint();
  const auto x2 = (a + ad) * (a + ad);

  PeriodicHamiltonian h;
  h.static_part = (k * s.omega_c) * (ad * a) + (k * s.omega_m) * (bd * b) -
                  (k * s.g0 / 2.0) * (x2 * (b + bd));
  if (s.alpha != 0.0)
    h.cosine_parts.push_back({(-k * s.alpha) * x2, k * s.omega_d, 0.0});
  if (s.pump_amplitude != 0.0) {
    // E(a e^{iwt} + a' e^{-iwt}) = E(a + a') cos(wt) + E i(a - a') cos(wt - pi/2)
    h.cosine_parts.push_back({(k * s.pump_amplitude) * (a + ad), k * s.omega_p, 0.0});
    h.cosine_parts.push_back(
        {(k * s.pump_amplitude) * (I * (a - ad)), k * s.omega_p, -std::numbers::pi / 2});
  }
  h.static_part.mark_hermitian();
  for (auto& p : h.cosine_parts) p.op.mark_hermitian();
  return h;
}

PeriodicHamiltonian build_lab_frame(const DeviceParameters& device, const HilbertDims& dims,
                                    double frequency_scale) {
  const auto q = figures_of_merit(device);
  LabFrameSpec s;
  s.omega_c = q.renormalized_cavity_frequency;
  s.omega_m = device.mechanical.frequency;
  s.g0 = q.g0;
  s.alpha = q.alpha;
  s.omega_d = device.bias.modulation_frequency;
  s.pump_amplitude = device.bias.pump_amplitude;
  s.omega_p = device.bias.pump_frequency;
  s.dims = dims;
  s.frequency_scale = frequency_scale > 0 ? frequency_scale : device.mechanical.frequency;
  return build_lab_frame(s);
}

RwaModelSpec rwa_spec_from_device(const DeviceParameters& device, const HilbertDims& dims) {
  const auto q = figures_of_merit(device);
  RwaModelSpec s;
  s.delta = device.bias.modulation_frequency / 2.0 - q.renormalized_cavity_frequency;
  s.small_delta = device.bias.modulation_frequency / 2.0 - device.bias.pump_frequency;
  s.g0 = q.g0;
  s.alpha = q.alpha;
  s.omega_m = device.mechanical.frequency;
  s.pump_amplitude = device.bias.pump_amplitude;
  s.dims = dims;
  s.frequency_scale = device.mechanical.frequency;
  return s;
}

namespace {

QuantumOperator rwa_without_pump(const RwaModelSpec& s, const ModeOps& m) {
  const double k = 1.0 / s.frequency_scale;
  const auto ad = m.a.adjoint();
  const auto bd = m.b.adjoint();
  const auto na = ad * m.a;
  return (-k * s.delta) * na + (k * s.omega_m) * (bd * m.b) -
         (k * s.alpha / 2.0) * (m.a * m.a + ad * ad) - (k * s.g0) * (na * (m.b + bd));
}

}  // namespace

QuantumOperator build_rwa(const RwaModelSpec& s) {
  check_scale(s.frequency_scale);
  if (s.small_delta != 0.0 && s.pump_amplitude != 0.0)
    throw domain_error("build_rwa: pump detuning delta != 0 gives a time-dependent Hamiltonian; "
                       "use build_rwa_periodic");
  const auto m = cavity_mechanics_ops(s.dims);
  QuantumOperator h = rwa_without_pump(s, m);
  if (s.pump_amplitude != 0.0) h += (s.pump_amplitude / s.frequency_scale) * (m.a + m.a.adjoint());
  h.mark_hermitian();
  return h;
}

PeriodicHamiltonian build_rwa_periodic(const RwaModelSpec& s) {
  check_scale(s.frequency_scale);
  const auto m = cavity_mechanics_ops(s.dims);
  const double k = 1.0 / s.frequency_scale;
  const auto ad = m.a.adjoint();
  PeriodicHamiltonian h;
  h.static_part = rwa_without_pump(s, m);
  h.static_part.mark_hermitian();
  if (s.pump_amplitude != 0.0) {
    // E(a e^{-idt} + a' e^{idt}) = E(a + a') cos(dt) + E i(a' - a) cos(dt - pi/2)
    h.cosine_parts.push_back({(k * s.pump_amplitude) * (m.a + ad), k * s.small_delta, 0.0});
    h.cosine_parts.push_back(
        {(k * s.pump_amplitude) * (I * (ad - m.a)), k * s.small_delta, -std::numbers::pi / 2});
    for (auto& p : h.cosine_parts) p.op.mark_hermitian();
  }
  return h;
}

QuantumOperator build_two_mode(const TwoModeSpec& s) {
  check_scale(s.frequency_scale);
  if (s.dims.size() != 3)
    throw domain_error("two-mode model needs dims [N_a, N_c, N_m], got " + s.dims.str());
  const double k = 1.0 / s.frequency_scale;
  const auto a = embed(destroy(s.dims[0]), s.dims, 0);
  const auto c = embed(destroy(s.dims[1]), s.dims, 1);
  const auto b = embed(destroy(s.dims[2]), s.dims, 2);
  const auto ad = a.adjoint(), cd = c.adjoint(), bd = b.adjoint();
  const auto x = b + bd;

  QuantumOperator h = (-k * s.delta_a) * (ad * a) + (-k * s.delta_c) * (cd * c) +
                      (k * s.omega_m) * (bd * b) - (k * s.g0_a) * (ad * a * x) -
                      (k * s.g0_c) * (cd * c * x);
  if (s.kind == TwoModeKind::nondegenerate)
    h += (k * s.strength) * (a * c + ad * cd);
  else
    h += (k * s.strength) * (a * cd + ad * c);
  h.mark_hermitian();
  return h;
}

QuantumOperator build_two_mode(const DeviceParameters& device, const HilbertDims& dims,
                               TwoModeKind kind, double strength) {
  const auto q = figures_of_merit(device);
  TwoModeSpec s;
  s.omega_m = device.mechanical.frequency;
  s.g0_a = q.g0;
  s.g0_c = q.g0;
  s.kind = kind;
  s.strength = strength;
  s.dims = dims;
  s.frequency_scale = device.mechanical.frequency;
  return build_two_mode(s);
}

}  // namespace squidom
