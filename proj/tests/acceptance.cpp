// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "squidom/device_model.hpp"
#include "squidom/experiments.hpp"
#include "squidom/lindblad.hpp"
#include "squidom/observables.hpp"
#include "squidom/roots.hpp"

using namespace squidom;
namespace fs = std::filesystem;

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<std::pair<std::string, StateDiagnostics>> validity_log;

void record_state(const std::string& label, const QuantumState& s) { validity_log.emplace_back(label, diagnose(s)); }

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

int failures = 0;

void criterion(const std::string& id, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && dt > budget_s) {
    o.pass = false;
    o.detail << " [runtime " << dt << " s over budget " << budget_s << " s]";
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << id << " (" << dt << " s)" << o.detail.str() << std::endl;
}

long double bisect_x_tan_x(long double r) {
  long double lo = 0, hi = std::numbers::pi_v<long double> / 2 - 1e-18L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (mid * std::tan(mid) < r ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  std::cout.precision(10);
  const DeviceParameters device;

  criterion("AC1 figures of merit at the reference device", 1.0, [&](Outcome& o) {
    const auto q = figures_of_merit(device, FrequencyMethod::table_scaling);
    o.detail << " g0/kappa=" << q.g0_over_kappa() << " g0^2/(kappa wm)=" << q.nonlinearity_parameter
             << " g0/wm=" << q.g0_over_omega_m() << " chi/2pi=" << q.chi / two_pi
             << " wc/2pi=" << q.renormalized_cavity_frequency / two_pi;
    o.require(within(q.g0_over_kappa(), 13.0, 0.10), "g0/kappa");
    o.require(within(q.nonlinearity_parameter, 1.3, 0.15), "g0^2/(kappa omega_m)");
    o.require(within(q.g0_over_omega_m(), 0.1, 0.15), "g0/omega_m");
    o.require(within(q.chi, two_pi * 1e9, 0.15), "chi");
    o.require(within(q.renormalized_cavity_frequency, two_pi * 4.5e9, 0.05), "omega_c^dc");
  });

  criterion("AC2 thermal occupation at 4.5 GHz, 10 mK", 1.0, [&](Outcome& o) {
    const double n = thermal_occupation(two_pi * 4.5e9, 10e-3);
    o.detail << " n_th=" << n;
    o.require(n >= 1e-10 && n <= 1e-9, "range [1e-10, 1e-9]");
  });

  criterion("AC3 x tan x = r solver", 1.0, [&](Outcome& o) {
    double worst_res = 0, worst_oracle = 0;
    for (double r : {0.01, 0.1, 0.276, 1.0, 5.0}) {
      const double x = solve_x_tan_x(r);
      worst_res = std::max(worst_res, std::abs(x * std::tan(x) - r));
      worst_oracle = std::max(worst_oracle, static_cast<double>(std::abs(x - bisect_x_tan_x(r))));
    }
    o.detail << " max residual=" << worst_res << " max oracle gap=" << worst_oracle;
    o.require(worst_res < 1e-12, "residual");
    o.require(worst_oracle < 1e-12, "bisection oracle");
  });

  criterion("AC4 parametric cavity steady moments", 30.0, [&](Outcome& o) {
    const std::vector<HilbertDims> ladder{HilbertDims{20, 2}, HilbertDims{30, 2}, HilbertDims{40, 2},
                                          HilbertDims{50, 2}, HilbertDims{60, 2}, HilbertDims{70, 2},
                                          HilbertDims{80, 2}};
    for (double a : {0.1, 0.25, 0.4}) {
      auto build = [a](const HilbertDims& d) {
        ScaledModel m;
        m.g0 = 0;
        m.alpha = a;
        m.dims = d;
        return build_model(m);
      };
      const NamedObservable n{"n", [](const QuantumState& s) { return mean_number(s, 0); }};
      const auto run = truncation_converge(build, ladder, n, 1e-9);
      const auto op = embed(destroy(run.dims[0]), run.dims, 0);
      const double n_me = expectation(op.adjoint() * op, run.result.state).real();
      const double m_me = std::abs(expectation(op * op, run.result.state));
      const auto oracle = dpa_steady_moments(a, 0.0);
      const double en = std::abs(n_me - oracle.n) / oracle.n;
      const double em = std::abs(m_me - std::abs(oracle.m)) / std::abs(oracle.m);
      o.detail << " a=" << a << " dim=" << run.dims[0] << " err_n=" << en << " err_m=" << em;
      o.require(en < 1e-6, "<a'a> at alpha/kappa=" + std::to_string(a));
      o.require(em < 1e-6, "|<a^2>| at alpha/kappa=" + std::to_string(a));
      record_state("AC4 alpha/kappa=" + std::to_string(a), run.result.state);
    }
  });

  criterion("AC5 photon decay", 5.0, [&](Outcome& o) {
    ScaledModel m;
    m.g0 = 0;
    m.dims = HilbertDims{8, 2};
    const auto model = build_model(m);
    std::vector<double> times;
    for (int i = 0; i < 50; ++i) times.push_back(0.15 * i);
    EvolveOptions opts;
    opts.ode.rtol = 1e-11;
    opts.ode.atol = 1e-13;
    opts.observables = {{"n", embed(number(8), m.dims, 0)}};
    const auto res = evolve(model, basis_state(m.dims, {5, 0}), times, opts);
    double worst = 0;
    for (std::size_t i = 0; i < times.size(); ++i)
      worst = std::max(worst, std::abs(res.series("n")[i] - 5.0 * std::exp(-m.kappa * times[i])));
    o.detail << " samples=" << times.size() << " max deviation=" << worst;
    o.require(worst < 1e-8, "n0 exp(-kappa t)");
    record_state("AC5 endpoint", res.final_state);
  });

  criterion("AC6 lab frame vs rotating frame", 60.0, [&](Outcome& o) {
    const HilbertDims dims{8, 8};
    LabFrameSpec lab;
    lab.omega_c = 100;
    lab.alpha = 1;
    lab.g0 = 1;
    lab.omega_d = 200;
    lab.omega_m = 20;
    lab.dims = dims;
    RwaModelSpec rwa;
    rwa.alpha = 1;
    rwa.g0 = 1;
    rwa.omega_m = 20;
    rwa.dims = dims;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = psi(1) = 1 / std::sqrt(2.0);
    const auto initial = product_state({pure_state(psi, HilbertDims{8}), basis_state(HilbertDims{8}, {0})});
    // ten modulation periods; the frame rotation is the identity there
    const std::vector<double> times{0.0, 10 * two_pi / lab.omega_d};
    EvolveOptions opts;
    opts.ode.rtol = 1e-12;
    opts.ode.atol = 1e-14;
    const auto a = evolve(LindbladModel(build_lab_frame(lab), {}), initial, times, opts);
    const auto b = evolve(LindbladModel(build_rwa(rwa), {}), initial, times, opts);
    const double f = fidelity(a.final_state, b.final_state);
    o.detail << " fidelity=" << f;
    o.require(f >= 0.999, "fidelity >= 0.999");
    record_state("AC6 lab endpoint", a.final_state);
    record_state("AC6 rotating endpoint", b.final_state);
  });

  criterion("AC7 photon blockade", 300.0, [&](Outcome& o) {
    BlockadeSpec s;
    s.g0_over_kappa = {0.0, 13.0};
    const auto r = blockade_scan(s);
    const double g2_free = r.number(0, "g2"), g2_strong = r.number(1, "g2");
    o.detail << " g2(g0=0)=" << g2_free << " g2(g0=13)=" << g2_strong
             << " nonlinearity=" << r.number(1, "nonlinearity_parameter") << " dims=" << r.text(1, "dims");
    o.require(std::abs(r.number(1, "nonlinearity_parameter") - 1.3) < 1e-12, "g0^2/(kappa omega_m) = 1.3");
    o.require(g2_strong < 1.0, "g2 < 1 at g0 = 13");
    o.require(g2_free >= 1 - 1e-6 && g2_free <= 1 + 1e-3, "g2 ~ 1 at g0 = 0");
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      o.require(r.text(i, "error").empty(), "scan point " + std::to_string(i) + ": " + r.text(i, "error"));
      validity_log.emplace_back("AC7 point " + std::to_string(i), StateDiagnostics{});
      if (r.text(i, "state_valid") != "true") validity_log.back().second.trace_error = 1.0;
    }
  });

  criterion("AC8 sideband direction", 300.0, [&](Outcome& o) {
    SidebandSpec s;
    const auto r = sideband_demo(s);
    const auto& runs = r.summary["runs"];
    const double cool = runs[0]["terminal_n_b"].get<double>(), heat = runs[1]["terminal_n_b"].get<double>();
    const double margin = heat - cool;
    o.detail << " n_b(-)=" << cool << " n_b(+)=" << heat << " margin=" << margin << " 10*rtol=" << 10 * s.ode.rtol;
    o.require(runs[0]["detuning_over_omega_m"].get<double>() < 0, "first run is the red-detuned one");
    o.require(margin > 10 * s.ode.rtol, "margin");
    for (const auto& run : runs) {
      StateDiagnostics d;
      d.trace_error = run["final_state"]["trace_error"].get<double>();
      d.hermiticity_error = run["final_state"]["hermiticity_error"].get<double>();
      d.min_eigenvalue = run["final_state"]["min_eigenvalue"].get<double>();
      validity_log.emplace_back("AC8 detuning " + std::to_string(run["detuning_over_omega_m"].get<double>()), d);
    }
  });

  criterion("AC9 state validity across AC4-AC8", 0.0, [&](Outcome& o) {
    o.detail << " states=" << validity_log.size();
    o.require(validity_log.size() >= 9, "every criterion contributed states");
    for (const auto& [label, d] : validity_log) {
      std::ostringstream s;
      s << label << " trace " << d.trace_error << " herm " << d.hermiticity_error << " min eig " << d.min_eigenvalue;
      o.require(d.valid(), s.str());
    }
  });

  criterion("AC10 harmonic census", 1.0, [&](Outcome& o) {
    const auto h = harmonic_couplings(device, 13);
    const auto q = figures_of_merit(device);
    double worst = 0;
    std::vector<int> over_kappa;
    int over_gamma = 0;
    for (const auto& c : h) {
      worst = std::max(worst, std::abs(c.g0 * std::pow(c.harmonic, 1.5) - h.front().g0) / h.front().g0);
      if (c.g0 > q.kappa) over_kappa.push_back(c.harmonic);
      if (c.g0 > q.gamma_m) ++over_gamma;
    }
    const auto r = harmonic_census(device, 13);
    o.detail << " max rel spread=" << worst << " over kappa=" << r.summary["count_over_kappa"]
             << " over gamma_m=" << r.summary["count_over_gamma_m"];
    o.require(h.size() == 7, "odd harmonics up to 13");
    o.require(worst < 1e-12, "g0(n) n^{3/2} constant");
    o.require(over_kappa == std::vector<int>{1, 3, 5}, "{1,3,5} above kappa");
    o.require(r.summary["qualifying_over_kappa"] == nlohmann::ordered_json({1, 3, 5}), "report set above kappa");
    o.require(r.summary["count_over_gamma_m"].get<int>() == over_gamma, "count above gamma_m emitted");
  });

  criterion("AC11 repeated CLI runs are byte-identical", 0.0, [&](Outcome& o) {
    const fs::path root = fs::temp_directory_path() / "squidom_acceptance";
    fs::remove_all(root);
    for (const std::string cmd : {"fom", "sweep", "harmonics", "dce", "blockade"}) {
      std::string bytes[2];
      for (int k = 0; k < 2; ++k) {
        const auto dir = root / (cmd + std::to_string(k));
        const std::string line =
            std::string(SQUIDOM_CLI_PATH) + " " + cmd + " --out " + dir.string() + " > /dev/null 2>&1";
        o.require(std::system(line.c_str()) == 0, cmd + " exit status");
        bytes[k] = slurp(dir / "report.json");
      }
      o.require(!bytes[0].empty() && bytes[0] == bytes[1], cmd + " report.json differs");
      o.detail << " " << cmd << "=" << bytes[0].size() << "B";
    }
  });

  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " of 11 criteria failing" << std::endl;
  return failures ? 1 : 0;
}
