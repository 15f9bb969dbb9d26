// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace slgate {

// Function sampled on a uniform grid over [x_lo, x_hi], endpoints included.
// Values between nodes are obtained by linear interpolation; evaluation
// outside the interval (beyond a small snapping tolerance) throws.
struct SampledFunction {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::vector<double> samples;

  SampledFunction() = default;
  SampledFunction(double lo, double hi, std::vector<double> values);

  int grid_n() const { return static_cast<int>(samples.size()); }
  double step() const { return (x_hi - x_lo) / static_cast<double>(grid_n() - 1); }
  double node(int i) const { return x_lo + static_cast<double>(i) * step(); }

  double eval(double x) const;
  double max_abs() const;

  // Enforces: x_lo < x_hi, at least two samples, all values finite.
  void validate() const;
};

// Linear-interpolation resampling of f onto a uniform n-point grid on
// [lo, hi]; [lo, hi] must lie inside the domain of f.
SampledFunction resample(const SampledFunction& f, double lo, double hi, int n);

// Composite trapezoid rule over the sample grid.
double trapezoid(const SampledFunction& f);
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

// Running trapezoid integral: out[i] = integral from x[0] to x[i].
std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& y);

// Composite Simpson rule on a uniform grid (odd point count required).
double simpson_uniform(double step, const std::vector<double>& y);

// Uniform grid helper, endpoints included.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace slgate
