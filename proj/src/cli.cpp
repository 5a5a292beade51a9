#include "squidom/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "squidom/errors.hpp"
#include "squidom/experiments.hpp"
#include "squidom/report.hpp"

namespace squidom {

using nlohmann::ordered_json;

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"fom",      "validate", "sweep",    "wavenumber",
                                                 "evolve",   "steady",   "wigner",   "blockade",
                                                 "sideband", "dce",      "harmonics"};
  return names;
}

std::string usage() {
  std::ostringstream u;
  u << "usage: squidom <command> [--config PATH] [--out DIR] [--strict] [--dims \"Nc,Nm\"] [--seed N]\n"
    << "commands:";
  for (const auto& c : commands()) u << ' ' << c;
  u << "\nexit codes: 0 ok, 2 validation error, 3 constraint violation (validate --strict), "
       "4 numerical non-convergence\n";
  return u.str();
}

namespace {

Report run_command(const std::string& command, const RunConfig& c) {
  const auto& d = c.device;
  if (command == "fom") return figures_report(d, frequency_method(c));
  if (command == "validate") return regime_report(d, validate_photon_number(c));
  if (command == "sweep") return sweep(d, sweep_spec(c));
  if (command == "wavenumber") return wavenumber_report(d, wavenumber_cosines(c));
  if (command == "harmonics") return harmonic_census(d, max_harmonic(c));
  if (command == "dce") return dce_photon_generation(dce_spec(c));
  if (command == "sideband") return sideband_demo(sideband_spec(c));
  if (command == "blockade") return blockade_scan(blockade_spec(c));
  if (command == "evolve") return evolve_report(evolve_spec(c));
  if (command == "steady") return steady_report(scenario_model(c, HilbertDims{6, 10}));
  if (command == "wigner") return wigner_report(wigner_spec(c));
  throw validation_error("command", "unknown command '" + command + "'");
}

void print_summary(const Report& r, const std::filesystem::path& dir, std::ostream& out) {
  out << "scenario " << r.scenario << "  inputs " << r.input_digest << "\n";
  for (const auto& [k, v] : r.summary.items()) {
    if (v.is_object()) {
      if (v.contains("worst")) out << "  " << k << ".worst = " << v["worst"].get<std::string>() << "\n";
      if (v.contains("valid")) out << "  " << k << ".valid = " << (v["valid"].get<bool>() ? "true" : "false") << "\n";
      continue;
    }
    if (v.is_array() && v.size() > 8) continue;
    out << "  " << k << " = " << json_text(v, -1) << "\n";
  }
  out << "  rows = " << r.rows.size() << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  out << "wrote " << (dir / "report.json").string() << ", data.csv, config.resolved.json\n";
}

}  // namespace

int dispatch(const std::string& command, RunConfig config, const CliOptions& options, std::ostream& out,
             std::ostream& err) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    err << "unknown command '" << command << "'\n" << usage();
    return exit_validation;
  }
  try {
    Report r = run_command(command, config);
    r.provenance["defaults_applied"] = config.defaults_applied;

    ordered_json resolved;
    resolved["command"] = command;
    for (const auto& [k, v] : config.resolved.items()) resolved[k] = v;
    resolved["defaults_applied"] = config.defaults_applied;

    std::filesystem::create_directories(options.out);
    write_file(options.out / "report.json", json_text(to_json(r)));
    write_file(options.out / "data.csv", csv_text(r));
    write_file(options.out / "config.resolved.json", json_text(resolved));
    print_summary(r, options.out, out);

    if (command == "validate" && options.strict && r.summary.at("worst") == "violation") {
      err << "constraint violation (--strict)\n";
      return exit_violation;
    }
    return exit_ok;
  } catch (const validation_error& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const convergence_error& e) {
    err << "numerical non-convergence: " << e.what() << "\n";
    return exit_nonconvergence;
  } catch (const domain_error& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SQUID optomechanics toolkit", "squidom"};
  std::string command, config_path, dims_text;
  CliOptions options;
  std::string out_dir = options.out.string();
  long long seed = 0;
  app.add_option("command", command, "one of: fom validate sweep wavenumber evolve steady wigner blockade "
                                     "sideband dce harmonics")
      ->required();
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--strict", options.strict, "validate: exit 3 on any constraint violation");
  app.add_option("--dims", dims_text, "truncation \"Nc,Nm\"");
  auto* seed_opt = app.add_option("--seed", seed, "reserved; all numerics are deterministic");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << usage();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << usage();
    return exit_validation;
  }
  options.out = out_dir;
  if (seed_opt->count()) options.seed = seed;

  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    err << "unknown command '" << command << "'\n" << usage();
    return exit_validation;
  }
  try {
    std::string text = "{}";
    if (!config_path.empty()) {
      std::ifstream f(config_path, std::ios::binary);
      if (!f) throw validation_error("--config", "cannot read " + config_path);
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    RunConfig config = parse_config(text);
    if (!dims_text.empty()) override_dims(config, parse_dims(dims_text));
    return dispatch(command, std::move(config), options, out, err);
  } catch (const validation_error& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_validation;
  }
}

}  // namespace squidom
