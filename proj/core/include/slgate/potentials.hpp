// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <variant>
#include <vector>

#include "slgate/grid.hpp"

namespace slgate {

struct ConstantPotential {
  double c = 0.0;
};

// alpha * x + beta
struct LinearPotential {
  double alpha = 0.0;
  double beta = 0.0;
};

// amplitude * sin(frequency * x + phase)
struct SinePotential {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

// Disjoint sampled pieces; evaluation picks the piece containing x.
struct PiecewisePotential {
  std::vector<SampledFunction> pieces;
};

struct TabulatedPotential {
  SampledFunction table;
};

struct PotentialSpec {
  std::variant<ConstantPotential, LinearPotential, SinePotential,
               PiecewisePotential, TabulatedPotential>
      shape;

  static PotentialSpec constant(double c);
  static PotentialSpec linear(double alpha, double beta);
  static PotentialSpec sine(double amplitude, double frequency, double phase);
  static PotentialSpec piecewise(std::vector<SampledFunction> pieces);
  static PotentialSpec tabulated(SampledFunction table);

  double eval(double x) const;
};

// Samples the spec on a uniform grid_n-point grid over [x_lo, x_hi].
SampledFunction materialize(const PotentialSpec& spec, double x_lo, double x_hi,
                            int grid_n);

// Trapezoid L^p norm over the sample grid; p = infinity gives the node sup.
// Requires p >= 1.
double lp_norm(const SampledFunction& f, double p);

// Even extension u(|x|/2) of a function on [0, a] to [-2a, 2a], node-exact:
// the result keeps one node per source node on each side of zero.
// Requires u.x_lo == 0 and 0 < a <= 1/2.
SampledFunction extend_parity(const SampledFunction& u);

// Max deviation |f - g| sampled over [lo, hi]; grids need not match, both
// functions are evaluated by interpolation at the denser resolution.
double max_dev_on(const SampledFunction& f, const SampledFunction& g, double lo,
                  double hi);
bool equal_on(const SampledFunction& f, const SampledFunction& g, double lo,
              double hi, double tol);

}  // namespace slgate
