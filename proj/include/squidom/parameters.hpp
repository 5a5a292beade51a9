#pragma once

// Dotted-path access into DeviceParameters, e.g. "bias.dc_flux_fraction".
// Frequency fields are angular internally and ordinary (Hz) at the I/O
// boundary; `io_scale` is the factor from internal to I/O units.

#include <span>
#include <string>
#include <string_view>

#include "squidom/device_model.hpp"

namespace squidom {

struct ParameterField {
  std::string_view path;
  double (*get)(const DeviceParameters&);
  void (*set)(DeviceParameters&, double);
  bool angular_frequency;
  std::string_view unit;  // I/O unit

  double io_scale() const;
};

std::span<const ParameterField> parameter_fields();

/// Throws validation_error for an unknown path.
const ParameterField& parameter_field(std::string_view path);

double get_parameter(const DeviceParameters& device, std::string_view path);
void set_parameter(DeviceParameters& device, std::string_view path, double value);

}  // namespace squidom
