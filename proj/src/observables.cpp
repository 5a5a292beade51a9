#include "squidom/observables.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace squidom {

namespace {

struct NumberMoments {
  double n1 = 0, n2 = 0, falling2 = 0;  // <n>, <n^2>, <n(n-1)>
};

NumberMoments moments(const QuantumState& state, std::size_t subsystem) {
  const auto red = partial_trace(state, subsystem);
  NumberMoments m;
  for (Eigen::Index n = 0; n < red.density_matrix.rows(); ++n) {
    const double p = red.density_matrix(n, n).real();
    const double dn = static_cast<double>(n);
    m.n1 += dn * p;
    m.n2 += dn * dn * p;
    m.falling2 += dn * (dn - 1.0) * p;
  }
  return m;
}

void require_photons(double n, const char* what) {
  if (!(n >= 1e-12))
    throw absent_photons_error(std::string(what) + " undefined: mean occupation below 1e-12");
}

}  // namespace

double mean_number(const QuantumState& state, std::size_t subsystem) {
  return moments(state, subsystem).n1;
}

double g2_zero(const QuantumState& state, std::size_t subsystem) {
  const auto m = moments(state, subsystem);
  require_photons(m.n1, "g2(0)");
  return m.falling2 / (m.n1 * m.n1);
}

double fano(const QuantumState& state, std::size_t subsystem) {
  const auto m = moments(state, subsystem);
  require_photons(m.n1, "Fano factor");
  return (m.n2 - m.n1 * m.n1) / m.n1;
}

namespace {

constexpr double series_tail_target = 1e-10;

/// Columns D(shift)|n>, n < ncols, on a basis of `rows` Fock levels. Exact in
/// every retained row: the recurrence D|n+1> = (a' - conj(shift)) D|n>/sqrt(n+1)
/// only reads lower rows.
Eigen::MatrixXcd displaced_columns(cplx shift, Eigen::Index ncols, Eigen::Index rows) {
  Eigen::MatrixXcd c(rows, ncols);
  c(0, 0) = std::exp(-0.5 * std::norm(shift));
  for (Eigen::Index k = 1; k < rows; ++k) c(k, 0) = c(k - 1, 0) * shift / std::sqrt(double(k));
  const cplx s = std::conj(shift);
  for (Eigen::Index n = 0; n + 1 < ncols; ++n) {
    const double norm = 1.0 / std::sqrt(double(n + 1));
    c(0, n + 1) = -s * c(0, n) * norm;
    for (Eigen::Index k = 1; k < rows; ++k)
      c(k, n + 1) = (std::sqrt(double(k)) * c(k - 1, n) - s * c(k, n)) * norm;
  }
  return c;
}

struct PointValue {
  double w;
  double tail;
};

PointValue wigner_point(const Eigen::MatrixXcd& rho, double x, double p) {
  const Eigen::Index n = rho.rows();
  const cplx beta(x / std::numbers::sqrt2, p / std::numbers::sqrt2);
  const double r = std::abs(beta);
  auto rows = static_cast<Eigen::Index>(n + r * r + 12.0 * r + 30.0);
  double last_tail = std::numeric_limits<double>::infinity();
  for (;;) {
    const Eigen::MatrixXcd c = displaced_columns(-beta, n, rows);
    const double tail = (1.0 - c.colwise().squaredNorm().array()).abs().maxCoeff();
    // stalls at the rounding floor of the recurrence
    if (tail < series_tail_target || tail > 0.5 * last_tail || rows > 4096) {
      const Eigen::MatrixXcd cr = c * rho;
      double acc = 0.0;
      for (Eigen::Index k = 0; k < rows; ++k) {
        const double term = cr.row(k).dot(c.row(k)).real();
        acc += (k % 2 == 0) ? term : -term;
      }
      return {acc / std::numbers::pi, tail};
    }
    last_tail = tail;
    rows *= 2;
  }
}

}  // namespace

double wigner_at(const QuantumState& reduced, double x, double p) {
  if (reduced.dims.size() != 1) throw domain_error("wigner_at expects a single-mode state");
  return wigner_point(reduced.density_matrix, x, p).w;
}

WignerResult wigner(const QuantumState& state, std::size_t subsystem, const PhaseSpaceGrid& grid) {
  if (grid.nx < 2 || grid.np < 2 || !(grid.x_max > grid.x_min) || !(grid.p_max > grid.p_min))
    throw domain_error("wigner: grid needs at least 2x2 points with increasing bounds");
  const QuantumState red = state.dims.size() == 1 ? state : partial_trace(state, subsystem);
  if (red.density_matrix.rows() > 60)
    throw domain_error("wigner: reduced dimension above 60 is not supported");

  WignerResult out;
  out.xs = grid.xs();
  out.ps = grid.ps();
  out.values.resize(grid.nx, grid.np);
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.np; ++j) {
      const auto v = wigner_point(red.density_matrix, out.xs[i], out.ps[j]);
      out.values(i, j) = v.w;
      out.max_series_error = std::max(out.max_series_error, v.tail);
    }
  const double dx = (grid.x_max - grid.x_min) / (grid.nx - 1);
  const double dp = (grid.p_max - grid.p_min) / (grid.np - 1);
  out.integral = out.values.sum() * dx * dp;
  if (std::abs(out.integral - 1.0) > 1e-3) {
    out.coverage_ok = false;
    std::ostringstream msg;
    msg << "grid does not contain the state: phase-space integral " << out.integral;
    out.warning = msg.str();
  }
  return out;
}

}  // namespace squidom
