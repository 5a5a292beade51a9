#pragma once

#include <Eigen/Dense>

#include <string>

#include "squidom/state.hpp"

namespace squidom {

/// <a'a'aa>/<a'a>^2 on the reduced state of `subsystem`.
/// Throws absent_photons_error when <a'a> < 1e-12.
double g2_zero(const QuantumState& state, std::size_t subsystem);

/// (<n^2> - <n>^2)/<n>; same error contract as g2_zero.
double fano(const QuantumState& state, std::size_t subsystem);

/// Mean occupation of one subsystem.
double mean_number(const QuantumState& state, std::size_t subsystem);

struct PhaseSpaceGrid {
  double x_min = -5, x_max = 5;
  int nx = 101;
  double p_min = -5, p_max = 5;
  int np = 101;

  Eigen::VectorXd xs() const { return Eigen::VectorXd::LinSpaced(nx, x_min, x_max); }
  Eigen::VectorXd ps() const { return Eigen::VectorXd::LinSpaced(np, p_min, p_max); }
};

struct WignerResult {
  Eigen::VectorXd xs, ps;
  Eigen::MatrixXd values;  // values(i, j) = W(xs[i], ps[j])
  double integral = 0.0;   // Riemann sum over the grid
  double max_series_error = 0.0;
  bool coverage_ok = true;
  std::string warning;
};

/// W(x, p) with x = (a + a')/sqrt(2), normalized so the phase-space integral
/// is 1. Evaluated as the expectation of the displaced parity operator,
/// W(beta) = (1/pi) Tr[rho D(beta) P D(beta)'], beta = (x + i p)/sqrt(2), with
/// the displaced Fock columns extended until the neglected tail is < 1e-10.
WignerResult wigner(const QuantumState& state, std::size_t subsystem, const PhaseSpaceGrid& grid);

/// Single-point evaluation with the same series.
double wigner_at(const QuantumState& reduced, double x, double p);

}  // namespace squidom
