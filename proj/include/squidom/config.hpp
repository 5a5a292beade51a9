#pragma once

// JSON run configuration. Three top-level blocks, all optional:
//   device     - DeviceParameters in I/O units (Hz, SI, flux in Phi_0)
//   simulation - dims, integrator tolerances, truncation ladder
//   scenario   - one sub-block per command
// Unknown keys are rejected; every missing key is filled from the default
// tree and its dotted path recorded in `defaults_applied`.

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "squidom/device_model.hpp"
#include "squidom/experiments.hpp"

namespace squidom {

struct RunConfig {
  DeviceParameters device;
  nlohmann::ordered_json resolved;  // full tree in I/O units
  std::vector<std::string> defaults_applied;
};

/// The default tree, in I/O units.
const nlohmann::ordered_json& default_config_tree();

/// Throws validation_error: field "config" with line/column for malformed
/// text, otherwise the dotted path of the offending key.
RunConfig parse_config(std::string_view text);

/// Replaces simulation.dims.
void override_dims(RunConfig& config, const HilbertDims& dims);
HilbertDims parse_dims(std::string_view text);

// Typed views of the scenario blocks. `fallback` is used when simulation.dims is null.
FrequencyMethod frequency_method(const RunConfig& c);
double validate_photon_number(const RunConfig& c);
SweepSpec sweep_spec(const RunConfig& c);
std::vector<double> wavenumber_cosines(const RunConfig& c);
int max_harmonic(const RunConfig& c);
DceSpec dce_spec(const RunConfig& c);
SidebandSpec sideband_spec(const RunConfig& c);
BlockadeSpec blockade_spec(const RunConfig& c);
ScaledModel scenario_model(const RunConfig& c, const HilbertDims& fallback);
EvolveSpec evolve_spec(const RunConfig& c);
WignerSpec wigner_spec(const RunConfig& c);
OdeOptions ode_options(const RunConfig& c);
std::optional<HilbertDims> simulation_dims(const RunConfig& c);

}  // namespace squidom
