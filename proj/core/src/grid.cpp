// SPDX-License-Identifier: Apache-2.0
#include "slgate/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slgate/errors.hpp"

namespace slgate {

SampledFunction::SampledFunction(double lo, double hi, std::vector<double> values)
    : x_lo(lo), x_hi(hi), samples(std::move(values)) {
  validate();
}

void SampledFunction::validate() const {
  if (!(x_lo < x_hi)) {
    throw ConfigError("SampledFunction: requires x_lo < x_hi");
  }
  if (samples.size() < 2) {
    throw ConfigError("SampledFunction: requires at least two samples");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) {
      throw ConfigError("SampledFunction: non-finite sample value");
    }
  }
}

double SampledFunction::eval(double x) const {
  const double h = step();
  const double snap = 1e-12 * (std::abs(x_lo) + std::abs(x_hi) + 1.0);
  if (x < x_lo - snap || x > x_hi + snap) {
    throw ConfigError("SampledFunction::eval: x = " + std::to_string(x) +
                      " outside [" + std::to_string(x_lo) + ", " +
                      std::to_string(x_hi) + "]");
  }
  double t = (x - x_lo) / h;
  int i = static_cast<int>(std::floor(t));
  i = std::clamp(i, 0, grid_n() - 2);
  const double w = t - static_cast<double>(i);
  return samples[i] + w * (samples[i + 1] - samples[i]);
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (double v : samples) m = std::max(m, std::abs(v));
  return m;
}

SampledFunction resample(const SampledFunction& f, double lo, double hi, int n) {
  if (n < 2) throw ConfigError("resample: need n >= 2");
  std::vector<double> out(static_cast<size_t>(n));
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] = f.eval(lo + i * h);
  }
  return SampledFunction(lo, hi, std::move(out));
}

double trapezoid(const SampledFunction& f) {
  const double h = f.step();
  double acc = 0.5 * (f.samples.front() + f.samples.back());
  for (int i = 1; i + 1 < f.grid_n(); ++i) acc += f.samples[static_cast<size_t>(i)];
  return acc * h;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("trapezoid: mismatched or too-short node/value arrays");
  }
  double acc = 0.0;
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    acc += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  }
  return acc;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw ConfigError("cumulative_trapezoid: mismatched node/value arrays");
  }
  std::vector<double> out(x.size(), 0.0);
  for (size_t i = 1; i < x.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return out;
}

double simpson_uniform(double step, const std::vector<double>& y) {
  const size_t n = y.size();
  if (n < 3 || n % 2 == 0) {
    throw ConfigError("simpson_uniform: needs an odd number of points >= 3");
  }
  double acc = y.front() + y.back();
  for (size_t i = 1; i + 1 < n; ++i) acc += y[i] * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * step / 3.0;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw ConfigError("linspace: need n >= 2");
  std::vector<double> out(static_cast<size_t>(n));
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = lo + i * h;
  out.back() = hi;
  return out;
}

}  // namespace slgate
