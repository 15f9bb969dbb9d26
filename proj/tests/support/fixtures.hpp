// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "slgate/certificate.hpp"
#include "slgate/potentials.hpp"
#include "slgate/sturm.hpp"

namespace slgate::testing {

inline constexpr double kPi = 3.14159265358979323846;

// Free half-line Neumann operator: q = 0, h = H = 0, lambda_j = (j pi)^2.
inline OperatorSpec neumann_op(int grid_n = 2001) {
  OperatorSpec op;
  op.q = materialize(PotentialSpec::constant(0.0), 0.0, 1.0, grid_n);
  op.bc = {0.0, 0.0};
  return op;
}

// Smooth oscillatory potential with asymmetric Robin data.
inline OperatorSpec generic_op(int grid_n = 2001) {
  OperatorSpec op;
  op.q = materialize(PotentialSpec::sine(2.0, 3.0, 0.0), 0.0, 1.0, grid_n);
  op.bc = {1.0, 2.0};
  return op;
}

// Zero-potential pair h1 = 1, h2 = 0: the transform kernel is exactly the
// box (1/4) 1_{|y| < |x|}.
inline PairProblem box_pair(int grid_n = 2001) {
  auto q = materialize(PotentialSpec::constant(0.0), 0.0, 1.0, grid_n);
  return make_pair(q, 1.0, q, 0.0, 0.0, 0.5);
}

// Generic pair: shared smooth background, a concentrated sin^2 bump on the
// left half, distinct Robin constants.
inline PairProblem generic_pair(int grid_n = 2001, double bump_amp = 0.9) {
  const double a = 0.5;
  const PotentialSpec base = PotentialSpec::sine(2.0, 3.0, 0.0);
  auto q2 = materialize(base, 0.0, 1.0, grid_n);
  auto q1 = q2;
  for (int i = 0; i < q1.grid_n(); ++i) {
    const double x = q1.node(i);
    if (x < a) {
      const double s = std::sin(kPi * x / a);
      q1.samples[static_cast<size_t>(i)] += bump_amp * s * s;
    }
  }
  return make_pair(q1, 0.8, q2, 0.3, 0.5, a);
}

// Constant difference on [0, a) against a zero background, box boundary
// constants: every kernel-side quantity has a closed form.
inline PairProblem const_diff_pair(double c = 1.0, int grid_n = 2001) {
  const double a = 0.5;
  auto q2 = materialize(PotentialSpec::constant(0.0), 0.0, 1.0, grid_n);
  auto q1 = q2;
  for (int i = 0; i < q1.grid_n(); ++i) {
    if (q1.node(i) < a) q1.samples[static_cast<size_t>(i)] = c;
  }
  return make_pair(q1, 1.0, q2, 0.0, 0.0, a);
}

// Smooth difference with dq(0) != 0 and a C^1 taper at a: the trapezoid
// error of the Lagrange integral keeps its h^2 leading term, so grid
// refinement ratios are clean.
inline PairProblem smooth_diff_pair(int grid_n = 2001) {
  const double a = 0.5;
  const PotentialSpec base = PotentialSpec::sine(2.0, 3.0, 0.0);
  auto q2 = materialize(base, 0.0, 1.0, grid_n);
  auto q1 = q2;
  for (int i = 0; i < q1.grid_n(); ++i) {
    const double x = q1.node(i);
    if (x < a) {
      const double s = std::cos(kPi * x / (2.0 * a));
      q1.samples[static_cast<size_t>(i)] += 1.5 * s * s;
    }
  }
  return make_pair(q1, 0.7, q2, 0.2, 0.3, a);
}

// Identical-operator pair (kappa = 0, f identically 0).
inline PairProblem identical_pair(int grid_n = 2001) {
  auto q = materialize(PotentialSpec::sine(2.0, 3.0, 0.0), 0.0, 1.0, grid_n);
  return make_pair(q, 1.0, q, 1.0, 2.0, 0.5);
}

}  // namespace slgate::testing
