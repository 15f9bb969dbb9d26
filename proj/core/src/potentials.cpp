// SPDX-License-Identifier: Apache-2.0
#include "slgate/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "slgate/errors.hpp"

namespace slgate {

PotentialSpec PotentialSpec::constant(double c) { return {ConstantPotential{c}}; }

PotentialSpec PotentialSpec::linear(double alpha, double beta) {
  return {LinearPotential{alpha, beta}};
}

PotentialSpec PotentialSpec::sine(double amplitude, double frequency, double phase) {
  return {SinePotential{amplitude, frequency, phase}};
}

PotentialSpec PotentialSpec::piecewise(std::vector<SampledFunction> pieces) {
  if (pieces.empty()) throw ConfigError("piecewise potential: no pieces");
  for (const auto& p : pieces) p.validate();
  return {PiecewisePotential{std::move(pieces)}};
}

PotentialSpec PotentialSpec::tabulated(SampledFunction table) {
  table.validate();
  return {TabulatedPotential{std::move(table)}};
}

double PotentialSpec::eval(double x) const {
  return std::visit(
      [x](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantPotential>) {
          return s.c;
        } else if constexpr (std::is_same_v<T, LinearPotential>) {
          return s.alpha * x + s.beta;
        } else if constexpr (std::is_same_v<T, SinePotential>) {
          return s.amplitude * std::sin(s.frequency * x + s.phase);
        } else if constexpr (std::is_same_v<T, PiecewisePotential>) {
          for (const auto& piece : s.pieces) {
            const double snap = 1e-12 * (std::abs(piece.x_lo) + std::abs(piece.x_hi) + 1.0);
            if (x >= piece.x_lo - snap && x <= piece.x_hi + snap) {
              return piece.eval(x);
            }
          }
          throw ConfigError("piecewise potential: x = " + std::to_string(x) +
                            " not covered by any piece");
        } else {
          return s.table.eval(x);
        }
      },
      shape);
}

SampledFunction materialize(const PotentialSpec& spec, double x_lo, double x_hi,
                            int grid_n) {
  if (grid_n < 2) throw ConfigError("materialize: need grid_n >= 2");
  if (!(x_lo < x_hi)) throw ConfigError("materialize: need x_lo < x_hi");
  std::vector<double> v(static_cast<size_t>(grid_n));
  const double h = (x_hi - x_lo) / static_cast<double>(grid_n - 1);
  for (int i = 0; i < grid_n; ++i) {
    const double x = (i + 1 == grid_n) ? x_hi : x_lo + i * h;
    v[static_cast<size_t>(i)] = spec.eval(x);
  }
  return SampledFunction(x_lo, x_hi, std::move(v));
}

double lp_norm(const SampledFunction& f, double p) {
  f.validate();
  if (std::isinf(p)) return f.max_abs();
  if (!(p >= 1.0)) throw ConfigError("lp_norm: requires p >= 1");
  const double h = f.step();
  double acc = 0.5 * (std::pow(std::abs(f.samples.front()), p) +
                      std::pow(std::abs(f.samples.back()), p));
  for (int i = 1; i + 1 < f.grid_n(); ++i) {
    acc += std::pow(std::abs(f.samples[static_cast<size_t>(i)]), p);
  }
  return std::pow(acc * h, 1.0 / p);
}

SampledFunction extend_parity(const SampledFunction& u) {
  u.validate();
  const double a = u.x_hi;
  if (std::abs(u.x_lo) > 1e-12) {
    throw ConfigError("extend_parity: domain must start at 0");
  }
  if (!(a > 0.0) || a > 0.5 + 1e-12) {
    throw ConfigError("extend_parity: requires 0 < a <= 1/2");
  }
  const int m = u.grid_n();
  const int n = 2 * m - 1;
  std::vector<double> v(static_cast<size_t>(n));
  // Node x_i = -2a + i * (2a / (m-1)); then |x_i|/2 lands exactly on the
  // source grid, so no interpolation is involved.
  for (int i = 0; i < n; ++i) {
    const int k = std::abs(i - (m - 1));
    v[static_cast<size_t>(i)] = u.samples[static_cast<size_t>(k)];
  }
  return SampledFunction(-2.0 * a, 2.0 * a, std::move(v));
}

double max_dev_on(const SampledFunction& f, const SampledFunction& g, double lo,
                  double hi) {
  if (!(lo < hi)) throw ConfigError("max_dev_on: need lo < hi");
  const double density = std::max((f.grid_n() - 1) / (f.x_hi - f.x_lo),
                                  (g.grid_n() - 1) / (g.x_hi - g.x_lo));
  const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) * density)) + 1);
  double dev = 0.0;
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 1 == n) ? hi : lo + i * h;
    dev = std::max(dev, std::abs(f.eval(x) - g.eval(x)));
  }
  return dev;
}

bool equal_on(const SampledFunction& f, const SampledFunction& g, double lo,
              double hi, double tol) {
  return max_dev_on(f, g, lo, hi) <= tol;
}

}  // namespace slgate
