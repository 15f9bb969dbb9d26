// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "slgate/grid.hpp"

namespace slgate {

// Robin data: u'(0) + h u(0) = 0 and u'(1) + H u(1) = 0.
struct RobinBC {
  double h = 0.0;
  double H = 0.0;
};

struct OperatorSpec {
  SampledFunction q;  // potential on [0, 1]
  RobinBC bc;
};

// psi(., lambda): solution of -u'' + q u = lambda u with u(0) = 1,
// u'(0) = -h, tabulated on the integration grid.
struct SolutionTrace {
  double lambda = 0.0;
  std::vector<double> nodes;
  std::vector<double> psi;
  std::vector<double> dpsi;

  double psi_at(double x) const;
  double dpsi_at(double x) const;
  // Sign changes of psi across grid steps in the open interval (0, x_end).
  int sign_changes() const;
};

struct SolverOptions {
  // Integration-step policy: at least base_steps steps, and at least
  // steps_per_unit_z * |Re z| steps per unit length. The floor of 24 grid
  // points per oscillation wavelength is enforced on explicit overrides.
  int base_steps = 2000;
  double steps_per_unit_z = 64.0;
  double root_rel_tol = 1e-8;  // bisection width target, relative to max(1, |lambda|)
  int scan_points = 48;        // characteristic samples per bracket sweep
  int max_widenings = 3;       // bracket growth attempts before giving up
};

struct Spectrum {
  OperatorSpec op;
  std::vector<double> eigenvalues;  // lambda_0 < lambda_1 < ...
  double root_rel_tol = 0.0;
  // max_j |W(lambda_j)| relative to the characteristic scale near the root
  double max_char_residual = 0.0;
};

// Steps required on an interval of given length by the accuracy policy;
// z_abs is |Re sqrt(lambda)| of the stiffest target. Throws when an explicit
// step count falls below the 24-points-per-wavelength floor.
int required_steps(double z_abs, double length, const SolverOptions& opt = {});
int check_explicit_steps(int steps, double z_abs, double length);

// RK4 shooting for psi. grid_steps = 0 selects the automatic policy;
// align_at > 0 places a grid node exactly at that abscissa.
SolutionTrace solve_psi(const SampledFunction& q, double h, double lambda,
                        int grid_steps = 0, double x_end = 1.0,
                        double align_at = -1.0);

// W(lambda) = psi'(1, lambda) + H psi(1, lambda); zeros are the eigenvalues.
double characteristic(const OperatorSpec& op, double lambda, int grid_steps = 0);

// Eigenvalues lambda_0..lambda_j_max by asymptotic-guess bracketing,
// bisection + secant polish, with the Sturm oscillation count as the index
// integrity check.
Spectrum compute_spectrum(const OperatorSpec& op, int j_max,
                          const SolverOptions& opt = {});

// r_j = lambda_j - (j pi)^2 - 2(H - h) - integral(q); tends to zero.
std::vector<double> asymptotic_residuals(const Spectrum& sp);

struct AsymptoticCheckRow {
  double z = 0.0;
  double sup_scaled_dev = 0.0;  // z * sup_x |psi(x, z^2) - cos(z x)|
};

// Large-z flatness of psi against cos(zx); the scaled deviation stays
// bounded as z grows.
std::vector<AsymptoticCheckRow> psi_asymptotic_check(
    const SampledFunction& q, double h, const std::vector<double>& z_list,
    int grid_steps = 0);

}  // namespace slgate
