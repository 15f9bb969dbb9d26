// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "slgate/counting.hpp"
#include "slgate/sturm.hpp"

namespace slgate {

// Finite-dimensional partial-data reconstruction: the potential is known on
// [a, 1]; the unknown left part is a cosine expansion
// q(x) = sum_k c_k cos(k pi x / a) on [0, a), and the left Robin constant h
// is a free parameter. Targets are eigenvalues at given indices.
struct ReconstructionProblem {
  SampledFunction known_part;  // on [a, 1]
  double a = 0.5;
  double H = 0.0;
  std::vector<int> target_indices;
  std::vector<double> target_values;
  int basis_dim = 4;
  double mu = 0.0;      // Tikhonov weight on the cosine coefficients
  int grid_n = 2001;    // potential materialization grid for the inversion
  int max_iterations = 60;
  double step_tol = 1e-10;
  double misfit_tol = 1e-12;
};

// Piecewise assembly on [0, 1]: basis sum left of a, known part from a on.
SampledFunction assemble_potential(std::span<const double> coeffs,
                                   const ReconstructionProblem& prob,
                                   int grid_n);

// Eigenvalues at the target indices for the given parameters. A positive
// solver_steps freezes the integration grid so the map stays smooth under
// finite-difference probing.
std::vector<double> forward_map(std::span<const double> coeffs, double h,
                                const ReconstructionProblem& prob, int grid_n,
                                int solver_steps = 0);

struct ReconstructionResult {
  std::vector<double> coefficients;
  double h = 0.0;
  std::vector<double> misfit_history;  // accepted steps, nonincreasing
  double final_misfit = 0.0;
  int iterations = 0;
  bool converged = false;
  // Gauss-Newton Hessian spectrum at the solution (regularization excluded),
  // ascending; rank deficiency witnesses under-determined target sets.
  std::vector<double> gn_hessian_eigenvalues;

  std::string to_json() const;
};

// Levenberg-Marquardt with relative eigenvalue weights w_j = max(1, |s_j|),
// multiplicative damping (x3 on reject, /3 on accept, start 1e-3), central
// finite-difference Jacobian.
ReconstructionResult reconstruct(const ReconstructionProblem& prob);

}  // namespace slgate
