#include <doctest.h>

#include <cmath>
#include <numbers>

#include "squidom/constants.hpp"
#include "squidom/device_model.hpp"
#include "squidom/errors.hpp"
#include "squidom/parameters.hpp"

using namespace squidom;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Bose occupation by direct geometric series sum_k exp(-k x)
double bose_series(double x) {
  double s = 0.0;
  for (int k = 1; k < 200000; ++k) {
    const double t = std::exp(-k * x);
    s += t;
    if (t < 1e-18 * s) break;
  }
  return s;
}

}  // namespace

TEST_CASE("default device is the reference parameter set") {
  const DeviceParameters d;
  CHECK_NOTHROW(validate(d));
  CHECK(d.bias.dc_flux_fraction == 0.35);
  CHECK(d.cavity.inductance_per_length * d.cavity.length == doctest::Approx(1e-9));
  CHECK(d.cavity.bare_frequency_at_zero_bias == doctest::Approx(two_pi * 1e10));
}

TEST_CASE("Josephson inductance and plasma frequency") {
  const SquidParameters s;
  CHECK(josephson_inductance(s, 0.0) == doctest::Approx(1.6455298923772664e-9).epsilon(1e-12));
  CHECK(josephson_inductance(s, 0.35) == doctest::Approx(3.6245910284935539e-9).epsilon(1e-12));
  CHECK(plasma_frequency(s) == doctest::Approx(1.7431393793260631e11).epsilon(1e-12));
  CHECK(plasma_frequency(s, 0.35) == doctest::Approx(1.1745066946598843e11).epsilon(1e-12));
  CHECK(beta_l(s) == doctest::Approx(3.0385348957572524e-3).epsilon(1e-12));
}

TEST_CASE("half-integer flux pole is guarded") {
  const SquidParameters s;
  CHECK_THROWS_AS(josephson_inductance(s, 0.5), domain_error);
  CHECK_THROWS_AS(josephson_inductance(s, -0.5), domain_error);
  CHECK_THROWS_AS(flux_tangent(0.4999999999), domain_error);
  CHECK_NOTHROW(josephson_inductance(s, 0.49));
  // sec is even in f
  CHECK(josephson_inductance(s, -0.2) == doctest::Approx(josephson_inductance(s, 0.2)));
}

TEST_CASE("figures of merit at the reference parameters") {
  const auto q = figures_of_merit(DeviceParameters{});
  CHECK(q.renormalized_cavity_frequency / two_pi == doctest::Approx(4.5399049973954679e9).epsilon(1e-12));
  CHECK(q.zero_point_displacement == doctest::Approx(9.1607946605027297e-14).epsilon(1e-12));
  CHECK(q.g0 / two_pi == doctest::Approx(1.144583262182897e6).epsilon(1e-11));
  CHECK(q.g0_over_kappa() == doctest::Approx(12.605806320171254).epsilon(1e-11));
  CHECK(q.g0_over_omega_m() == doctest::Approx(0.1144583262182897).epsilon(1e-11));
  CHECK(q.nonlinearity_parameter == doctest::Approx(1.4428394920387394).epsilon(1e-11));
  CHECK(q.chi / two_pi == doctest::Approx(1.1349762493488670e9).epsilon(1e-12));
  CHECK(q.kappa / two_pi == doctest::Approx(90798.099947909358).epsilon(1e-12));
  CHECK(q.chi == q.renormalized_cavity_frequency / 4.0);
  CHECK(q.alpha == 0.0);
  CHECK(q.gamma_m == doctest::Approx(two_pi * 1e3));
}

TEST_CASE("coupling scalings") {
  DeviceParameters d;
  const double g = optomechanical_coupling(d);
  d.bias.external_field *= 2;
  CHECK(optomechanical_coupling(d) == doctest::Approx(2 * g).epsilon(1e-14));

  DeviceParameters z;
  z.bias.dc_flux_fraction = 0.0;
  const auto q = figures_of_merit(z);
  CHECK(q.g0 == 0.0);
  CHECK(q.nonlinearity_parameter == 0.0);
  CHECK(q.chi == doctest::Approx(z.cavity.bare_frequency_at_zero_bias / 4.0));

  // g0 increases monotonically over [0, 0.45]
  double prev = -1;
  for (int i = 0; i <= 45; ++i) {
    DeviceParameters s;
    s.bias.dc_flux_fraction = i / 100.0;
    const double gi = optomechanical_coupling(s);
    CHECK(gi > prev);
    prev = gi;
  }

  DeviceParameters m;
  m.bias.modulation_amplitude_fraction = 0.01;
  const auto p = parametric_coupling(m);
  CHECK(p.alpha == doctest::Approx(p.chi * std::numbers::pi * 0.01 * std::tan(0.35 * std::numbers::pi)));
}

TEST_CASE("regime constraints") {
  const DeviceParameters d;
  const auto c = validate_regime(d, 0.0);
  CHECK(c.field_ratio == doctest::Approx(0.04 / 0.198));
  CHECK(c.field == Verdict::ok);
  CHECK(c.inductance_ratio == doctest::Approx(6.6929481949522121e-3).epsilon(1e-10));
  CHECK(c.inductance == Verdict::ok);
  CHECK(c.flux_kick_ratio == doctest::Approx(1.1281260369759875e-5).epsilon(1e-10));
  CHECK(c.current_ratio == 0.0);

  const double i1 = cavity_current_estimate(d);
  CHECK(i1 == doctest::Approx(7.7565106829137982e-8).epsilon(1e-10));
  CHECK(cavity_current_estimate(d, 0.0) == doctest::Approx(5.4846813022342454e-8).epsilon(1e-10));
  const auto c1 = validate_regime(d, i1);
  CHECK(c1.current_ratio == doctest::Approx(1.7085182811895158).epsilon(1e-10));
  CHECK(c1.current == Verdict::violation);
  CHECK(c1.worst() == Verdict::violation);

  CHECK(small_ratio_verdict(0.1) == Verdict::ok);
  CHECK(small_ratio_verdict(0.3) == Verdict::warning);
  CHECK(small_ratio_verdict(0.5) == Verdict::warning);
  CHECK(small_ratio_verdict(0.51) == Verdict::violation);
  CHECK(field_verdict(0.79) == Verdict::ok);
  CHECK(field_verdict(0.9) == Verdict::warning);
  CHECK(field_verdict(1.0) == Verdict::violation);

  DeviceParameters near;
  near.bias.dc_flux_fraction = 0.49;
  const auto cn = validate_regime(near, cavity_current_estimate(near));
  CHECK(cn.current == Verdict::violation);
  CHECK(cn.worst() == Verdict::violation);
}

TEST_CASE("device validation names the field") {
  DeviceParameters d;
  d.bias.dc_flux_fraction = 0.6;
  try {
    validate(d);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    CHECK(e.field() == "bias.dc_flux_fraction");
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
  DeviceParameters b;
  b.bias.external_field = 0.2;
  CHECK_THROWS_AS(validate(b), validation_error);
  DeviceParameters g;
  g.mechanical.geometric_factor = 1.5;
  CHECK_THROWS_AS(validate(g), validation_error);
  DeviceParameters t;
  t.bias.temperature = -1;
  CHECK_THROWS_AS(validate(t), validation_error);
}

TEST_CASE("wavenumber boundary condition") {
  DeviceParameters d;
  const auto s = solve_wavenumber(d, 0.0);
  CHECK(s.rhs == doctest::Approx(0.27589319516017735).epsilon(1e-12));
  CHECK(s.half_phase == doctest::Approx(0.50228627115978008).epsilon(1e-12));
  CHECK(s.residual < 1e-12);
  CHECK(s.wavenumber == doctest::Approx(2 * s.half_phase / d.cavity.length));
  CHECK(s.small_argument_valid);
  CHECK(s.small_argument_estimate == doctest::Approx(std::sqrt(s.rhs)));

  DeviceParameters z;
  z.bias.dc_flux_fraction = 0.0;
  CHECK(solve_wavenumber(z, 1.0).half_phase == doctest::Approx(0.70877627691367815).epsilon(1e-12));

  // modulation lowers r for cos > 0 at positive flux
  DeviceParameters m;
  m.bias.modulation_amplitude_fraction = 0.05;
  CHECK(solve_wavenumber(m, 1.0).rhs < solve_wavenumber(m, -1.0).rhs);
  m.bias.modulation_amplitude_fraction = 1.0;
  CHECK_THROWS_AS(solve_wavenumber(m, 1.0), domain_error);
}

TEST_CASE("cavity frequency methods") {
  DeviceParameters z;
  z.bias.dc_flux_fraction = 0.0;
  CHECK(renormalized_cavity_frequency(z, FrequencyMethod::mode_equation) ==
        doctest::Approx(two_pi * 1e10).epsilon(1e-12));
  CHECK(renormalized_cavity_frequency(z) == doctest::Approx(two_pi * 1e10));
  const DeviceParameters d;
  CHECK(renormalized_cavity_frequency(d, FrequencyMethod::mode_equation) / two_pi ==
        doctest::Approx(7.0866687771627188e9).epsilon(1e-10));
  const auto q = figures_of_merit(d, FrequencyMethod::mode_equation);
  CHECK(q.chi == doctest::Approx(q.renormalized_cavity_frequency / 4));
  // g0/kappa does not depend on the frequency method
  CHECK(q.g0_over_kappa() == doctest::Approx(figures_of_merit(d).g0_over_kappa()).epsilon(1e-12));
}

TEST_CASE("reference systems table") {
  const auto& rows = reference_systems();
  REQUIRE(rows.size() == 7);
  bool zipper = false, squid = false;
  for (const auto& r : rows) {
    if (r.name.find("zipper") != std::string_view::npos) {
      zipper = true;
      CHECK(r.g0_over_kappa == doctest::Approx(2e-4));
      CHECK(r.g0_over_omega_m == doctest::Approx(3e-2));
      CHECK(r.nonlinearity == doctest::Approx(6e-6));
      CHECK(std::isnan(r.chi_over_2pi_hz));
    }
    if (r.name.find("SQUID") != std::string_view::npos) {
      squid = true;
      CHECK(r.g0_over_kappa == 13);
      CHECK(r.nonlinearity == doctest::Approx(1.3));
      CHECK(r.chi_over_2pi_hz == doctest::Approx(1e9));
    }
  }
  CHECK(zipper);
  CHECK(squid);
}

TEST_CASE("harmonic couplings") {
  const DeviceParameters d;
  const auto q = figures_of_merit(d);
  const auto h = harmonic_couplings(d, 13);
  REQUIRE(h.size() == 7);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double n = h[i].harmonic;
    CHECK(h[i].harmonic == int(2 * i + 1));
    CHECK(std::abs(h[i].g0 * std::pow(n, 1.5) - q.g0) <= 1e-12 * q.g0);
    if (i) CHECK(h[i].g0 < h[i - 1].g0);
  }
  CHECK(h[0].regime == CouplingRegime::ultra_strong);
  CHECK(h[0].g0 == q.g0);
  int over_kappa = 0;
  for (const auto& x : h) over_kappa += x.g0 > q.kappa;
  CHECK(over_kappa == 3);
}

TEST_CASE("thermal occupation") {
  using constants::boltzmann;
  using constants::hbar;
  CHECK(thermal_occupation(1e9, 0.0) == 0.0);
  const double w = two_pi * 4.5e9, T = 0.01;
  const double n = thermal_occupation(w, T);
  CHECK(n >= 1e-10);
  CHECK(n <= 1e-9);
  CHECK(n == doctest::Approx(4.1755959899979310e-10).epsilon(1e-10));
  for (double f : {1e6, 1e7, 1e8, 5e9}) {
    const double x = hbar * two_pi * f / (boltzmann * T);
    CHECK(thermal_occupation(two_pi * f, T) == doctest::Approx(bose_series(x)).epsilon(1e-11));
  }
  CHECK(thermal_occupation(two_pi * 1e7, 0.01) == doctest::Approx(20.340618339036451).epsilon(1e-10));
  // high-temperature limit k_B T / (hbar omega) - 1/2
  const double hot = thermal_occupation(two_pi * 1e6, 10.0);
  CHECK(hot == doctest::Approx(boltzmann * 10.0 / (hbar * two_pi * 1e6) - 0.5).epsilon(1e-8));
  CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), domain_error);
}

TEST_CASE("parameter registry round trip") {
  DeviceParameters d;
  for (const auto& f : parameter_fields()) {
    const double v = f.get(d);
    f.set(d, v * 1.5 + 1.0);
    CHECK(get_parameter(d, f.path) == doctest::Approx(v * 1.5 + 1.0));
    f.set(d, v);
  }
  CHECK(parameter_field("mechanical.frequency").io_scale() == doctest::Approx(1.0 / two_pi));
  CHECK(parameter_field("bias.dc_flux_fraction").io_scale() == 1.0);
  CHECK_THROWS_AS(parameter_field("bias.nope"), validation_error);
  set_parameter(d, "bias.external_field", 0.1);
  CHECK(d.bias.external_field == 0.1);
}
