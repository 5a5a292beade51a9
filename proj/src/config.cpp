#include "squidom/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "squidom/errors.hpp"
#include "squidom/parameters.hpp"
#include "squidom/report.hpp"

namespace squidom {

using nlohmann::ordered_json;

namespace {

ordered_json dims_tree(std::initializer_list<std::pair<int, int>> rungs) {
  ordered_json a = ordered_json::array();
  for (auto [c, m] : rungs) a.push_back({c, m});
  return a;
}

ordered_json build_default_tree() {
  ordered_json t;
  t["device"] = device_to_json(DeviceParameters{});

  auto& sim = t["simulation"];
  sim["dims"] = nullptr;  // scenario default
  sim["rtol"] = 1e-8;
  sim["atol"] = 1e-10;
  sim["ladder"] = dims_tree({{4, 6}, {5, 8}, {6, 10}, {8, 12}, {10, 16}});
  sim["tolerance"] = 1e-4;

  auto& sc = t["scenario"];
  sc["fom"]["frequency_method"] = "table_scaling";
  sc["validate"]["photon_number"] = 1.0;
  sc["sweep"]["parameter"] = "bias.dc_flux_fraction";
  sc["sweep"]["values"] = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45};
  sc["sweep"]["outputs"] = {"g0", "g0_over_kappa", "nonlinearity_parameter"};
  sc["wavenumber"]["modulation_cosines"] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  sc["harmonics"]["max_harmonic"] = 13;

  const DceSpec dce;
  sc["dce"]["alpha_over_kappa"] = dce.alpha_over_kappa;
  sc["dce"]["delta_over_kappa"] = dce.delta_over_kappa;
  sc["dce"]["cavity_dim"] = dce.cavity_dim;
  sc["dce"]["horizon"] = dce.horizon;
  sc["dce"]["samples"] = dce.samples;

  const SidebandSpec sb;
  sc["sideband"]["g0"] = sb.g0;
  sc["sideband"]["omega_m"] = sb.omega_m;
  sc["sideband"]["alpha"] = sb.alpha;
  sc["sideband"]["gamma_m"] = sb.gamma_m;
  sc["sideband"]["n_th_mech"] = sb.n_th_mech;
  sc["sideband"]["detunings_over_omega_m"] = sb.detunings_over_omega_m;
  sc["sideband"]["horizon"] = sb.horizon;
  sc["sideband"]["samples"] = sb.samples;

  const BlockadeSpec bl;
  sc["blockade"]["g0_over_kappa"] = bl.g0_over_kappa;
  sc["blockade"]["omega_m_over_kappa"] = bl.omega_m_over_kappa;
  sc["blockade"]["gamma_m_over_kappa"] = bl.gamma_m_over_kappa;
  sc["blockade"]["pump_over_kappa"] = bl.pump_over_kappa;

  auto& m = sc["model"];
  m["from_device"] = false;
  m["kappa"] = 1.0;
  m["g0"] = 13.0;
  m["omega_m"] = 130.0;
  m["gamma_m"] = 0.013;
  m["alpha"] = 0.0;
  m["delta"] = -1.3;
  m["pump"] = 0.05;
  m["n_th_mech"] = 0.0;
  m["n_th_cavity"] = 0.0;

  sc["evolve"]["cavity_amplitude"] = 1.0;
  sc["evolve"]["horizon"] = 10.0;
  sc["evolve"]["samples"] = 101;

  const PhaseSpaceGrid g{-4, 4, 41, -4, 4, 41};
  sc["wigner"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
                  {"p_min", g.p_min}, {"p_max", g.p_max}, {"np", g.np}};
  return t;
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_type(const ordered_json& def, const ordered_json& v, const std::string& path) {
  auto fail = [&](const char* want) { throw validation_error(path, std::string("expected ") + want); };
  if (def.is_null()) {
    if (!v.is_null() && !v.is_array()) fail("an array or null");
  } else if (def.is_number_integer()) {
    if (!v.is_number_integer()) fail("an integer");
  } else if (def.is_number()) {
    if (!v.is_number()) fail("a number");
  } else if (def.is_string()) {
    if (!v.is_string()) fail("a string");
  } else if (def.is_boolean()) {
    if (!v.is_boolean()) fail("a boolean");
  } else if (def.is_array()) {
    if (!v.is_array()) fail("an array");
  }
}

ordered_json merge(const ordered_json& def, const ordered_json& user, const std::string& path,
                   std::vector<std::string>& defaults) {
  if (!user.is_object()) throw validation_error(path.empty() ? "config" : path, "expected an object");
  for (const auto& [k, v] : user.items())
    if (!def.contains(k)) throw validation_error(join(path, k), "unknown key");
  ordered_json out = ordered_json::object();
  for (const auto& [k, d] : def.items()) {
    const std::string p = join(path, k);
    if (!user.contains(k) && d.is_object()) {
      out[k] = merge(d, ordered_json::object(), p, defaults);
    } else if (!user.contains(k)) {
      out[k] = d;
      defaults.push_back(p);
    } else if (d.is_object()) {
      out[k] = merge(d, user.at(k), p, defaults);
    } else {
      check_type(d, user.at(k), p);
      out[k] = user.at(k);
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const ordered_json& scenario(const RunConfig& c, const char* name) { return c.resolved.at("scenario").at(name); }

std::vector<double> numbers(const ordered_json& j, const std::string& path) {
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw validation_error(path, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

HilbertDims dims_from(const ordered_json& j, const std::string& path) {
  std::vector<int> d;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw validation_error(path, "expected an array of integers");
    d.push_back(v.get<int>());
  }
  try {
    return HilbertDims(std::move(d));
  } catch (const domain_error& e) {
    throw validation_error(path, e.what());
  }
}

HilbertDims two_mode_dims(const HilbertDims& d, const std::string& path) {
  if (d.size() != 2) throw validation_error(path, "expected [cavity, mechanics]");
  return d;
}

}  // namespace

const ordered_json& default_config_tree() {
  static const ordered_json tree = build_default_tree();
  return tree;
}

RunConfig parse_config(std::string_view text) {
  ordered_json user;
  try {
    user = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw validation_error("config", "parse error at line " + std::to_string(line) + ", column " +
                                         std::to_string(col) + ": " + e.what());
  }
  RunConfig c;
  c.resolved = merge(default_config_tree(), user, "", c.defaults_applied);

  const auto& dev = c.resolved.at("device");
  for (const auto& f : parameter_fields()) {
    const std::string path(f.path);
    const auto dot = path.find('.');
    const auto& v = dot == std::string::npos ? dev.at(path) : dev.at(path.substr(0, dot)).at(path.substr(dot + 1));
    f.set(c.device, v.get<double>() / f.io_scale());
  }
  try {
    validate(c.device);
  } catch (const validation_error& e) {
    throw validation_error("device." + e.field(), std::string(e.what()).substr(e.field().size() + 2));
  }

  if (const auto& d = c.resolved["simulation"]["dims"]; !d.is_null())
    two_mode_dims(dims_from(d, "simulation.dims"), "simulation.dims");
  for (const auto& rung : c.resolved["simulation"]["ladder"])
    two_mode_dims(dims_from(rung, "simulation.ladder"), "simulation.ladder");
  const auto& method = scenario(c, "fom").at("frequency_method").get<std::string>();
  if (method != "table_scaling" && method != "mode_equation")
    throw validation_error("scenario.fom.frequency_method", "must be table_scaling or mode_equation");
  return c;
}

void override_dims(RunConfig& config, const HilbertDims& dims) {
  config.resolved["simulation"]["dims"] = dims.subsystems();
  std::erase(config.defaults_applied, std::string("simulation.dims"));
}

HilbertDims parse_dims(std::string_view text) {
  std::vector<int> d;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto tok = text.substr(pos, comma - pos);
    int v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || tok.empty())
      throw validation_error("--dims", "expected \"Nc,Nm\" with integer entries");
    d.push_back(v);
    pos = comma + 1;
  }
  if (d.size() != 2) throw validation_error("--dims", "expected two entries \"Nc,Nm\"");
  try {
    return HilbertDims(std::move(d));
  } catch (const domain_error& e) {
    throw validation_error("--dims", e.what());
  }
}

std::optional<HilbertDims> simulation_dims(const RunConfig& c) {
  const auto& d = c.resolved.at("simulation").at("dims");
  if (d.is_null()) return std::nullopt;
  return dims_from(d, "simulation.dims");
}

OdeOptions ode_options(const RunConfig& c) {
  const auto& s = c.resolved.at("simulation");
  OdeOptions o;
  o.rtol = s.at("rtol").get<double>();
  o.atol = s.at("atol").get<double>();
  if (!(o.rtol > 0)) throw validation_error("simulation.rtol", "must be > 0");
  if (!(o.atol > 0)) throw validation_error("simulation.atol", "must be > 0");
  return o;
}

FrequencyMethod frequency_method(const RunConfig& c) {
  return scenario(c, "fom").at("frequency_method") == "mode_equation" ? FrequencyMethod::mode_equation
                                                                       : FrequencyMethod::table_scaling;
}

double validate_photon_number(const RunConfig& c) { return scenario(c, "validate").at("photon_number"); }

SweepSpec sweep_spec(const RunConfig& c) {
  const auto& s = scenario(c, "sweep");
  SweepSpec spec;
  spec.parameter_path = s.at("parameter").get<std::string>();
  const auto& field = parameter_field(spec.parameter_path);
  for (double v : numbers(s.at("values"), "scenario.sweep.values")) spec.values.push_back(v / field.io_scale());
  for (const auto& o : s.at("outputs")) {
    if (!o.is_string()) throw validation_error("scenario.sweep.outputs", "expected an array of strings");
    spec.outputs.push_back(o.get<std::string>());
  }
  return spec;
}

std::vector<double> wavenumber_cosines(const RunConfig& c) {
  return numbers(scenario(c, "wavenumber").at("modulation_cosines"), "scenario.wavenumber.modulation_cosines");
}

int max_harmonic(const RunConfig& c) { return scenario(c, "harmonics").at("max_harmonic"); }

DceSpec dce_spec(const RunConfig& c) {
  const auto& s = scenario(c, "dce");
  DceSpec d;
  d.alpha_over_kappa = s.at("alpha_over_kappa");
  d.delta_over_kappa = s.at("delta_over_kappa");
  d.cavity_dim = s.at("cavity_dim");
  if (auto dims = simulation_dims(c)) d.cavity_dim = (*dims)[0];
  d.horizon = s.at("horizon");
  d.samples = s.at("samples");
  d.ode = ode_options(c);
  return d;
}

SidebandSpec sideband_spec(const RunConfig& c) {
  const auto& s = scenario(c, "sideband");
  SidebandSpec d;
  d.g0 = s.at("g0");
  d.omega_m = s.at("omega_m");
  d.alpha = s.at("alpha");
  d.gamma_m = s.at("gamma_m");
  d.n_th_mech = s.at("n_th_mech");
  d.detunings_over_omega_m = numbers(s.at("detunings_over_omega_m"), "scenario.sideband.detunings_over_omega_m");
  if (auto dims = simulation_dims(c)) d.dims = *dims;
  d.horizon = s.at("horizon");
  d.samples = s.at("samples");
  d.ode = ode_options(c);
  return d;
}

BlockadeSpec blockade_spec(const RunConfig& c) {
  const auto& s = scenario(c, "blockade");
  BlockadeSpec d;
  d.g0_over_kappa = numbers(s.at("g0_over_kappa"), "scenario.blockade.g0_over_kappa");
  d.omega_m_over_kappa = s.at("omega_m_over_kappa");
  d.gamma_m_over_kappa = s.at("gamma_m_over_kappa");
  d.pump_over_kappa = s.at("pump_over_kappa");
  d.ladder.clear();
  for (const auto& rung : c.resolved.at("simulation").at("ladder"))
    d.ladder.push_back(dims_from(rung, "simulation.ladder"));
  d.tolerance = c.resolved.at("simulation").at("tolerance");
  return d;
}

ScaledModel scenario_model(const RunConfig& c, const HilbertDims& fallback) {
  const auto& s = scenario(c, "model");
  const HilbertDims dims = simulation_dims(c).value_or(fallback);
  if (s.at("from_device").get<bool>()) return scaled_from_device(c.device, dims);
  ScaledModel m;
  m.kappa = s.at("kappa");
  m.g0 = s.at("g0");
  m.omega_m = s.at("omega_m");
  m.gamma_m = s.at("gamma_m");
  m.alpha = s.at("alpha");
  m.delta = s.at("delta");
  m.pump = s.at("pump");
  m.n_th_mech = s.at("n_th_mech");
  m.n_th_cavity = s.at("n_th_cavity");
  m.dims = dims;
  return m;
}

EvolveSpec evolve_spec(const RunConfig& c) {
  const auto& s = scenario(c, "evolve");
  EvolveSpec e;
  e.model = scenario_model(c, HilbertDims{6, 10});
  e.cavity_amplitude = s.at("cavity_amplitude");
  e.horizon = s.at("horizon");
  e.samples = s.at("samples");
  e.ode = ode_options(c);
  return e;
}

WignerSpec wigner_spec(const RunConfig& c) {
  const auto& s = scenario(c, "wigner");
  WignerSpec w;
  w.model = scenario_model(c, HilbertDims{6, 10});
  w.grid = {s.at("x_min"), s.at("x_max"), s.at("nx"), s.at("p_min"), s.at("p_max"), s.at("np")};
  return w;
}

}  // namespace squidom
