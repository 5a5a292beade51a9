#pragma once

// Dormand-Prince 8(5,3) explicit integrator for Eigen vectors (real or complex).
// Steps are clipped so every requested output time is hit exactly; no dense
// output is used.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "squidom/errors.hpp"

namespace squidom {

struct OdeOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0: automatic
  long max_steps = 10'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// Integrates y' = rhs(t, y, dydt) from times.front() through every entry of
/// `times` (strictly increasing), calling observe(index, t, y) at each one,
/// including index 0 with the initial value.
template <typename Vector, typename Rhs, typename Observer>
OdeStats integrate_dop853(Rhs&& rhs, Vector y, std::span<const double> times, const OdeOptions& opt,
                          Observer&& observe) {
  static constexpr double c2 = 0.05260015195876773187856, c3 = 0.07890022793815159781784,
                          c4 = 0.11835034190722739672676, c5 = 0.28164965809277260327324,
                          c6 = 0.33333333333333333333333, c7 = 0.25, c8 = 0.30769230769230769230769,
                          c9 = 0.65128205128205128205128, c10 = 0.6, c11 = 0.85714285714285714285714;
  static constexpr double b1 = 0.05429373411656876223805, b6 = 4.45031289275240888144114,
                          b7 = 1.89151789931450038304282, b8 = -5.80120396001058478146721,
                          b9 = 0.31116436695781989440892, b10 = -0.15216094966251607855618,
                          b11 = 0.20136540080403034837478, b12 = 0.04471061572777259051769;
  static constexpr double bhh1 = 0.24409448818897637795276, bhh2 = 0.73384668828161185734136,
                          bhh3 = 0.02205882352941176470588;
  static constexpr double er1 = 0.01312004499419488073250, er6 = -1.22515644637620444072057,
                          er7 = -0.49575894965725019152141, er8 = 1.66437718245498653696153,
                          er9 = -0.35032884874997368168865, er10 = 0.33417911871301747902973,
                          er11 = 0.08192320648511571246571, er12 = -0.02235530786388629525884;
  static constexpr double a21 = 0.05260015195876773187856, a31 = 0.01972505698453789945446,
                          a32 = 0.05917517095361369836338, a41 = 0.02958758547680684918169,
                          a43 = 0.08876275643042054754507, a51 = 0.24136513415926668550237,
                          a53 = -0.88454947932828608534486, a54 = 0.92483400326179200311574,
                          a61 = 0.03703703703703703703704, a64 = 0.17082860872947387127960,
                          a65 = 0.12546768756682242501669, a71 = 0.03710937500000000000000,
                          a74 = 0.17025221101954403931498, a75 = 0.06021653898045596068502,
                          a76 = -0.01757812500000000000000, a81 = 0.03709200011850479271088,
                          a84 = 0.17038392571223999381021, a85 = 0.10726203044637328465181,
                          a86 = -0.01531943774862440175279, a87 = 0.00827378916381402288758,
                          a91 = 0.62411095871607571711443, a94 = -3.36089262944694129406857,
                          a95 = -0.86821934684172600681819, a96 = 27.5920996994467083049416,
                          a97 = 20.1540675504778934086187, a98 = -43.4898841810699588477366,
                          a101 = 0.47766253643826436589043, a104 = -2.48811461997166764192642,
                          a105 = -0.59029082683684299637145, a106 = 21.2300514481811942347289,
                          a107 = 15.2792336328824235832597, a108 = -33.2882109689848629194453,
                          a109 = -0.02033120170850862613582, a111 = -0.93714243008598732571704,
                          a114 = 5.18637242884406370830024, a115 = 1.09143734899672957818500,
                          a116 = -8.14978701074692612513997, a117 = -18.5200656599969598641566,
                          a118 = 22.7394870993505042818970, a119 = 2.49360555267965238987089,
                          a1110 = -3.04676447189821950038237, a121 = 2.27331014751653820792360,
                          a124 = -10.5344954667372501984067, a125 = -2.00087205822486249909676,
                          a126 = -17.9589318631187989172766, a127 = 27.9488845294199600508500,
                          a128 = -2.85899827713502369474066, a129 = -8.87285693353062954433549,
                          a1210 = 12.3605671757943030647266, a1211 = 0.64339274601576353035597;
  constexpr double safe = 0.9, fac1 = 0.333, fac2 = 6.0;

  if (times.empty()) return {};
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw domain_error("output times must be strictly increasing");

  const Eigen::Index n = y.size();
  Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), k8(n), k9(n), k10(n), yt(n);
  OdeStats stats;
  auto eval = [&](double t, const Vector& x, Vector& dx) {
    rhs(t, x, dx);
    ++stats.evaluations;
  };

  double t = times.front();
  observe(std::size_t{0}, t, static_cast<const Vector&>(y));
  if (times.size() == 1) return stats;

  eval(t, y, k1);
  const double span_total = times.back() - times.front();
  double h = opt.initial_step;
  if (!(h > 0)) {
    // step with |h f| ~ 0.01 |y|, as a starting guess
    const double fy = k1.norm(), ny = y.norm();
    h = (fy > 0 && ny > 0) ? 0.01 * ny / fy : 1e-6 * span_total;
    h = std::min({h, span_total, opt.max_step});
  }

  std::size_t next = 1;
  while (next < times.size()) {
    const double target = times[next];
    bool last = false;
    double step = std::min(h, opt.max_step);
    if (t + step >= target || target - (t + step) < 1e-12 * std::abs(target)) {
      step = target - t;
      last = true;
    }
    if (!(step > std::abs(t) * 1e-14) || !std::isfinite(step))
      throw convergence_error("integrator step size underflow at t = " + std::to_string(t));
    if (stats.accepted + stats.rejected >= opt.max_steps)
      throw convergence_error("integrator exceeded " + std::to_string(opt.max_steps) +
                              " steps at t = " + std::to_string(t));

    yt = y + step * a21 * k1;
    eval(t + c2 * step, yt, k2);
    yt = y + step * (a31 * k1 + a32 * k2);
    eval(t + c3 * step, yt, k3);
    yt = y + step * (a41 * k1 + a43 * k3);
    eval(t + c4 * step, yt, k4);
    yt = y + step * (a51 * k1 + a53 * k3 + a54 * k4);
    eval(t + c5 * step, yt, k5);
    yt = y + step * (a61 * k1 + a64 * k4 + a65 * k5);
    eval(t + c6 * step, yt, k6);
    yt = y + step * (a71 * k1 + a74 * k4 + a75 * k5 + a76 * k6);
    eval(t + c7 * step, yt, k7);
    yt = y + step * (a81 * k1 + a84 * k4 + a85 * k5 + a86 * k6 + a87 * k7);
    eval(t + c8 * step, yt, k8);
    yt = y + step * (a91 * k1 + a94 * k4 + a95 * k5 + a96 * k6 + a97 * k7 + a98 * k8);
    eval(t + c9 * step, yt, k9);
    yt = y + step * (a101 * k1 + a104 * k4 + a105 * k5 + a106 * k6 + a107 * k7 + a108 * k8 +
                     a109 * k9);
    eval(t + c10 * step, yt, k10);
    yt = y + step * (a111 * k1 + a114 * k4 + a115 * k5 + a116 * k6 + a117 * k7 + a118 * k8 +
                     a119 * k9 + a1110 * k10);
    eval(t + c11 * step, yt, k2);
    yt = y + step * (a121 * k1 + a124 * k4 + a125 * k5 + a126 * k6 + a127 * k7 + a128 * k8 +
                     a129 * k9 + a1210 * k10 + a1211 * k2);
    eval(t + step, yt, k3);
    k4 = b1 * k1 + b6 * k6 + b7 * k7 + b8 * k8 + b9 * k9 + b10 * k10 + b11 * k2 + b12 * k3;
    k5 = y + step * k4;

    // stretched error estimate of Hairer's DOP853
    double err = 0.0, err2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sk = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(k5[i]));
      const double e2 = std::abs(k4[i] - bhh1 * k1[i] - bhh2 * k9[i] - bhh3 * k3[i]) / sk;
      const double e1 = std::abs(er1 * k1[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] +
                                 er9 * k9[i] + er10 * k10[i] + er11 * k2[i] + er12 * k3[i]) /
                        sk;
      err2 += e2 * e2;
      err += e1 * e1;
    }
    double deno = err + 0.01 * err2;
    if (deno <= 0.0) deno = 1.0;
    err = std::abs(step) * err / std::sqrt(deno * static_cast<double>(n));

    double fac = std::pow(err, 1.0 / 8.0);
    fac = std::max(1.0 / fac2, std::min(1.0 / fac1, fac / safe));

    if (err <= 1.0) {
      ++stats.accepted;
      y = k5;
      t = last ? target : t + step;
      eval(t, y, k1);
      // a clipped final step says nothing about the natural step size
      if (!last || step / fac < h) h = step / fac;
      if (last) {
        observe(next, t, static_cast<const Vector&>(y));
        ++next;
      }
    } else {
      ++stats.rejected;
      h = step / std::min(1.0 / fac1, fac / safe);
    }
  }
  return stats;
}

}  // namespace squidom
