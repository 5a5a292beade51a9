#include "squidom/parameters.hpp"

#include <array>

#include "squidom/constants.hpp"
#include "squidom/errors.hpp"

namespace squidom {

#define SQUIDOM_FIELD(path, member, angular, unit)                                   \
  ParameterField {                                                                    \
    path, [](const DeviceParameters& d) { return d.member; },                         \
        [](DeviceParameters& d, double v) { d.member = v; }, angular, unit            \
  }

namespace {

const std::array fields = {
    SQUIDOM_FIELD("squid.critical_current", squid.critical_current, false, "A"),
    SQUIDOM_FIELD("squid.junction_capacitance", squid.junction_capacitance, false, "F"),
    SQUIDOM_FIELD("squid.loop_self_inductance", squid.loop_self_inductance, false, "H"),
    SQUIDOM_FIELD("squid.junction_asymmetry", squid.junction_asymmetry, false, "1"),
    SQUIDOM_FIELD("cavity.inductance_per_length", cavity.inductance_per_length, false, "H/m"),
    SQUIDOM_FIELD("cavity.capacitance_per_length", cavity.capacitance_per_length, false, "F/m"),
    SQUIDOM_FIELD("cavity.length", cavity.length, false, "m"),
    SQUIDOM_FIELD("cavity.bare_frequency_at_zero_bias", cavity.bare_frequency_at_zero_bias, true, "Hz"),
    SQUIDOM_FIELD("cavity.quality_factor", cavity.quality_factor, false, "1"),
    SQUIDOM_FIELD("mechanical.mass", mechanical.mass, false, "kg"),
    SQUIDOM_FIELD("mechanical.frequency", mechanical.frequency, true, "Hz"),
    SQUIDOM_FIELD("mechanical.oscillator_length", mechanical.oscillator_length, false, "m"),
    SQUIDOM_FIELD("mechanical.geometric_factor", mechanical.geometric_factor, false, "1"),
    SQUIDOM_FIELD("mechanical.quality_factor", mechanical.quality_factor, false, "1"),
    SQUIDOM_FIELD("bias.dc_flux_fraction", bias.dc_flux_fraction, false, "Phi0"),
    SQUIDOM_FIELD("bias.modulation_amplitude_fraction", bias.modulation_amplitude_fraction, false, "Phi0"),
    SQUIDOM_FIELD("bias.modulation_frequency", bias.modulation_frequency, true, "Hz"),
    SQUIDOM_FIELD("bias.external_field", bias.external_field, false, "T"),
    SQUIDOM_FIELD("bias.pump_amplitude", bias.pump_amplitude, true, "Hz"),
    SQUIDOM_FIELD("bias.pump_frequency", bias.pump_frequency, true, "Hz"),
    SQUIDOM_FIELD("bias.temperature", bias.temperature, false, "K"),
    SQUIDOM_FIELD("material_critical_field", material_critical_field, false, "T"),
};

}  // namespace

#undef SQUIDOM_FIELD

double ParameterField::io_scale() const { return angular_frequency ? 1.0 / constants::two_pi : 1.0; }

std::span<const ParameterField> parameter_fields() { return fields; }

const ParameterField& parameter_field(std::string_view path) {
  for (const auto& f : fields)
    if (f.path == path) return f;
  throw validation_error(std::string(path), "unknown device parameter path");
}

double get_parameter(const DeviceParameters& device, std::string_view path) {
  return parameter_field(path).get(device);
}

void set_parameter(DeviceParameters& device, std::string_view path, double value) {
  parameter_field(path).set(device, value);
}

}  // namespace squidom
