// SPDX-License-Identifier: Apache-2.0
#include "slgate/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "slgate/errors.hpp"
#include "slgate/parallel.hpp"

namespace slgate {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Grid nodes on [0, x_end] with an optional aligned interior node. Each
// segment is uniform; steps are distributed proportionally to length.
std::vector<double> build_nodes(double x_end, int steps, double align_at) {
  if (align_at > 0.0 && align_at < x_end * (1.0 - 1e-12)) {
    const double frac = align_at / x_end;
    int s1 = std::max(1, static_cast<int>(std::lround(steps * frac)));
    int s2 = std::max(1, steps - s1);
    std::vector<double> nodes;
    nodes.reserve(static_cast<size_t>(s1 + s2 + 1));
    for (int i = 0; i <= s1; ++i) {
      nodes.push_back(align_at * static_cast<double>(i) / s1);
    }
    for (int i = 1; i <= s2; ++i) {
      nodes.push_back(align_at + (x_end - align_at) * static_cast<double>(i) / s2);
    }
    nodes[static_cast<size_t>(s1)] = align_at;
    nodes.back() = x_end;
    return nodes;
  }
  std::vector<double> nodes(static_cast<size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    nodes[static_cast<size_t>(i)] = x_end * static_cast<double>(i) / steps;
  }
  nodes.back() = x_end;
  return nodes;
}

// RK4 integrator for u'' = (q - lambda) u with q frozen on the grid
// (node and midpoint values precomputed, shared across lambda).
class PsiIntegrator {
 public:
  PsiIntegrator(const SampledFunction& q, std::vector<double> nodes)
      : nodes_(std::move(nodes)) {
    const size_t n = nodes_.size();
    q_node_.resize(n);
    q_mid_.resize(n - 1);
    for (size_t i = 0; i < n; ++i) q_node_[i] = q.eval(nodes_[i]);
    for (size_t i = 0; i + 1 < n; ++i) {
      q_mid_[i] = q.eval(0.5 * (nodes_[i] + nodes_[i + 1]));
    }
  }

  struct Endpoint {
    double psi = 0.0;
    double dpsi = 0.0;
    int sign_changes = 0;
  };

  Endpoint endpoint(double lambda, double h) const {
    double u = 1.0, v = -h;
    int flips = 0;
    int prev = 1;
    const size_t n = nodes_.size();
    for (size_t i = 0; i + 1 < n; ++i) {
      step(lambda, i, u, v);
      const int s = (u > 0.0) - (u < 0.0);
      if (s != 0 && s != prev) {
        ++flips;
        prev = s;
      }
    }
    return {u, v, flips};
  }

  SolutionTrace solve(double lambda, double h) const {
    SolutionTrace tr;
    tr.lambda = lambda;
    tr.nodes = nodes_;
    tr.psi.resize(nodes_.size());
    tr.dpsi.resize(nodes_.size());
    double u = 1.0, v = -h;
    tr.psi[0] = u;
    tr.dpsi[0] = v;
    for (size_t i = 0; i + 1 < nodes_.size(); ++i) {
      step(lambda, i, u, v);
      tr.psi[i + 1] = u;
      tr.dpsi[i + 1] = v;
    }
    return tr;
  }

  const std::vector<double>& nodes() const { return nodes_; }

 private:
  void step(double lambda, size_t i, double& u, double& v) const {
    const double dt = nodes_[i + 1] - nodes_[i];
    const double c0 = q_node_[i] - lambda;
    const double cm = q_mid_[i] - lambda;
    const double c1 = q_node_[i + 1] - lambda;
    const double k1u = v;
    const double k1v = c0 * u;
    const double k2u = v + 0.5 * dt * k1v;
    const double k2v = cm * (u + 0.5 * dt * k1u);
    const double k3u = v + 0.5 * dt * k2v;
    const double k3v = cm * (u + 0.5 * dt * k2u);
    const double k4u = v + dt * k3v;
    const double k4v = c1 * (u + dt * k3u);
    u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }

  std::vector<double> nodes_;
  std::vector<double> q_node_;
  std::vector<double> q_mid_;
};

struct RootResult {
  double lambda = 0.0;
  double residual_rel = 0.0;
  int sign_changes = 0;
};

// Bisection to relative width root_rel_tol, then a short secant polish.
// w_scale is the characteristic magnitude on the enclosing scan interval,
// used to report |W(root)| relative to a meaningful scale.
RootResult refine_root(const PsiIntegrator& ig, double h, double H, double lo,
                       double hi, double w_lo, double w_hi, double rel_tol,
                       double w_scale) {
  auto W = [&](double lam) {
    const auto ep = ig.endpoint(lam, h);
    return ep.dpsi + H * ep.psi;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::max(1.0, std::abs(mid))) break;
    const double wm = W(mid);
    if ((wm < 0.0) == (w_lo < 0.0)) {
      lo = mid;
      w_lo = wm;
    } else {
      hi = mid;
      w_hi = wm;
    }
  }
  w_scale = std::max(w_scale, std::numeric_limits<double>::min());
  double x0 = lo, f0 = w_lo, x1 = hi, f1 = w_hi;
  for (int it = 0; it < 3; ++it) {
    if (f1 == f0) break;
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 > lo) || !(x2 < hi)) x2 = 0.5 * (lo + hi);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = W(x1);
  }
  const auto ep = ig.endpoint(x1, h);
  RootResult rr;
  rr.lambda = x1;
  rr.residual_rel = std::abs(ep.dpsi + H * ep.psi) / w_scale;
  rr.sign_changes = ep.sign_changes;
  return rr;
}

void check_unit_domain(const SampledFunction& q, const char* where) {
  if (std::abs(q.x_lo) > 1e-12 || std::abs(q.x_hi - 1.0) > 1e-12) {
    throw ConfigError(std::string(where) + ": potential must live on [0, 1]");
  }
}

}  // namespace

double SolutionTrace::psi_at(double x) const {
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  size_t i = static_cast<size_t>(std::distance(nodes.begin(), it));
  i = std::clamp<size_t>(i, 1, nodes.size() - 1);
  const double w = (x - nodes[i - 1]) / (nodes[i] - nodes[i - 1]);
  return psi[i - 1] + w * (psi[i] - psi[i - 1]);
}

double SolutionTrace::dpsi_at(double x) const {
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  size_t i = static_cast<size_t>(std::distance(nodes.begin(), it));
  i = std::clamp<size_t>(i, 1, nodes.size() - 1);
  const double w = (x - nodes[i - 1]) / (nodes[i] - nodes[i - 1]);
  return dpsi[i - 1] + w * (dpsi[i] - dpsi[i - 1]);
}

int SolutionTrace::sign_changes() const {
  int flips = 0;
  int prev = (psi[0] > 0.0) - (psi[0] < 0.0);
  if (prev == 0) prev = 1;
  for (size_t i = 1; i < psi.size(); ++i) {
    const int s = (psi[i] > 0.0) - (psi[i] < 0.0);
    if (s != 0 && s != prev) {
      ++flips;
      prev = s;
    }
  }
  return flips;
}

int required_steps(double z_abs, double length, const SolverOptions& opt) {
  const double base = static_cast<double>(opt.base_steps) * length;
  const double osc = opt.steps_per_unit_z * std::max(z_abs, 1.0) * length;
  return std::max({16, static_cast<int>(std::ceil(base)),
                   static_cast<int>(std::ceil(osc))});
}

int check_explicit_steps(int steps, double z_abs, double length) {
  const double needed = 24.0 * z_abs * length / (2.0 * kPi);
  if (static_cast<double>(steps) < needed) {
    throw NumericError(
        "integration grid too coarse for requested lambda: " +
        std::to_string(steps) + " steps < 24 points per wavelength (needs >= " +
        std::to_string(static_cast<int>(std::ceil(needed))) + ")");
  }
  return steps;
}

SolutionTrace solve_psi(const SampledFunction& q, double h, double lambda,
                        int grid_steps, double x_end, double align_at) {
  q.validate();
  if (!(x_end > q.x_lo) || x_end > q.x_hi + 1e-12) {
    throw ConfigError("solve_psi: x_end outside the potential domain");
  }
  const double z_abs = std::sqrt(std::max(std::abs(lambda), 1.0));
  const int steps = grid_steps > 0
                        ? check_explicit_steps(grid_steps, z_abs, x_end - q.x_lo)
                        : required_steps(z_abs, x_end - q.x_lo, {});
  PsiIntegrator ig(q, build_nodes(x_end, steps, align_at));
  return ig.solve(lambda, h);
}

double characteristic(const OperatorSpec& op, double lambda, int grid_steps) {
  check_unit_domain(op.q, "characteristic");
  const double z_abs = std::sqrt(std::max(std::abs(lambda), 1.0));
  const int steps = grid_steps > 0 ? check_explicit_steps(grid_steps, z_abs, 1.0)
                                   : required_steps(z_abs, 1.0, {});
  PsiIntegrator ig(op.q, build_nodes(1.0, steps, -1.0));
  const auto ep = ig.endpoint(lambda, op.bc.h);
  return ep.dpsi + op.bc.H * ep.psi;
}

Spectrum compute_spectrum(const OperatorSpec& op, int j_max,
                          const SolverOptions& opt) {
  check_unit_domain(op.q, "compute_spectrum");
  if (j_max < 0) throw ConfigError("compute_spectrum: j_max must be >= 0");

  const double iq = trapezoid(op.q);
  const double tail_shift = 2.0 * (op.bc.H - op.bc.h) + iq;

  std::vector<double> lambdas(static_cast<size_t>(j_max) + 1);
  std::vector<double> residuals(static_cast<size_t>(j_max) + 1, 0.0);

  auto search_one = [&](int j) {
    const double guess = static_cast<double>(j) * j * kPi * kPi + tail_shift;
    const double halfw0 =
        kPi * kPi * std::max(1.0, 2.0 * static_cast<double>(j) - 1.0) / 2.0;
    for (int widen = 0; widen <= opt.max_widenings; ++widen) {
      const double halfw = halfw0 * std::pow(1.6, widen);
      const double lo = guess - halfw;
      const double hi = guess + halfw;
      const double z_hat =
          std::sqrt(std::max({std::abs(lo), std::abs(hi), 1.0}));
      PsiIntegrator ig(op.q,
                       build_nodes(1.0, required_steps(z_hat, 1.0, opt), -1.0));
      const int K = std::max(8, opt.scan_points);
      std::vector<double> w(static_cast<size_t>(K) + 1);
      for (int k = 0; k <= K; ++k) {
        const double lam = lo + (hi - lo) * static_cast<double>(k) / K;
        const auto ep = ig.endpoint(lam, op.bc.h);
        w[static_cast<size_t>(k)] = ep.dpsi + op.bc.H * ep.psi;
      }
      bool found = false;
      double best_lambda = 0.0, best_res = 0.0, best_dist = 0.0;
      for (int k = 0; k < K; ++k) {
        const double wa = w[static_cast<size_t>(k)];
        const double wb = w[static_cast<size_t>(k) + 1];
        if (!std::isfinite(wa) || !std::isfinite(wb)) continue;
        if ((wa < 0.0) == (wb < 0.0)) continue;
        const double la = lo + (hi - lo) * static_cast<double>(k) / K;
        const double lb = lo + (hi - lo) * static_cast<double>(k + 1) / K;
        const auto rr = refine_root(ig, op.bc.h, op.bc.H, la, lb, wa, wb,
                                    opt.root_rel_tol,
                                    std::max(std::abs(wa), std::abs(wb)));
        if (rr.sign_changes != j) continue;
        const double dist = std::abs(rr.lambda - guess);
        if (!found || dist < best_dist) {
          found = true;
          best_lambda = rr.lambda;
          best_res = rr.residual_rel;
          best_dist = dist;
        }
      }
      if (found) {
        lambdas[static_cast<size_t>(j)] = best_lambda;
        residuals[static_cast<size_t>(j)] = best_res;
        return;
      }
    }
    throw NumericError("compute_spectrum: bracket failure at index j=" +
                       std::to_string(j));
  };

  parallel_for(j_max + 1, search_one);

  for (int j = 1; j <= j_max; ++j) {
    if (!(lambdas[static_cast<size_t>(j)] > lambdas[static_cast<size_t>(j) - 1])) {
      throw NumericError("compute_spectrum: ordering failure at index j=" +
                         std::to_string(j));
    }
  }

  Spectrum sp;
  sp.op = op;
  sp.eigenvalues = std::move(lambdas);
  sp.root_rel_tol = opt.root_rel_tol;
  sp.max_char_residual = *std::max_element(residuals.begin(), residuals.end());
  return sp;
}

std::vector<double> asymptotic_residuals(const Spectrum& sp) {
  const double iq = trapezoid(sp.op.q);
  const double shift = 2.0 * (sp.op.bc.H - sp.op.bc.h) + iq;
  std::vector<double> r(sp.eigenvalues.size());
  for (size_t j = 0; j < sp.eigenvalues.size(); ++j) {
    const double jj = static_cast<double>(j);
    r[j] = sp.eigenvalues[j] - jj * jj * kPi * kPi - shift;
  }
  return r;
}

std::vector<AsymptoticCheckRow> psi_asymptotic_check(
    const SampledFunction& q, double h, const std::vector<double>& z_list,
    int grid_steps) {
  std::vector<AsymptoticCheckRow> rows(z_list.size());
  parallel_for(static_cast<int>(z_list.size()), [&](int i) {
    const double z = z_list[static_cast<size_t>(i)];
    if (!(z > 0.0)) throw ConfigError("psi_asymptotic_check: needs z > 0");
    const auto tr = solve_psi(q, h, z * z, grid_steps);
    double sup = 0.0;
    for (size_t k = 0; k < tr.nodes.size(); ++k) {
      sup = std::max(sup, std::abs(tr.psi[k] - std::cos(z * tr.nodes[k])));
    }
    rows[static_cast<size_t>(i)] = {z, z * sup};
  });
  return rows;
}

}  // namespace slgate
