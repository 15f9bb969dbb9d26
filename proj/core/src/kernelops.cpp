// SPDX-License-Identifier: Apache-2.0
#include "slgate/kernelops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include <Eigen/Dense>
#include <json.hpp>

#include "slgate/errors.hpp"
#include "slgate/parallel.hpp"
#include "slgate/potentials.hpp"

namespace slgate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void csv_cell(std::ostream& os, double v, bool last = false) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf << (last ? "\n" : ",");
}

std::vector<double> trapezoid_weights(const std::vector<double>& nodes) {
  std::vector<double> w(nodes.size(), 0.0);
  const double h = nodes[1] - nodes[0];
  for (size_t i = 0; i < nodes.size(); ++i) w[i] = h;
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

// q1 - q2 sampled on the half grid [0, a] aligned with the kernel x grid.
SampledFunction pair_dq_half(const PairProblem& pp, int mx) {
  std::vector<double> dq(static_cast<size_t>(mx));
  for (int k = 0; k < mx; ++k) {
    const double t = pp.a * static_cast<double>(k) / (mx - 1);
    dq[static_cast<size_t>(k)] = pp.q1.eval(t) - pp.q2.eval(t);
  }
  return SampledFunction(0.0, pp.a, std::move(dq));
}

// Indicator of |y| < |x| on the shared symmetric grids; 1/2 on the
// diagonal |y| = |x| (integer-exact comparison).
double box_indicator(int iy, int cy, int ny, int ix, int cx, int nx) {
  const long long lhs = static_cast<long long>(std::abs(iy - cy)) * (nx - 1);
  const long long rhs = static_cast<long long>(std::abs(ix - cx)) * (ny - 1);
  if (lhs < rhs) return 1.0;
  if (lhs == rhs) return 0.5;
  return 0.0;
}

// Weighted operator 1-norm of a matrix acting on x-grid samples.
double weighted_norm1(const Eigen::MatrixXd& B, const std::vector<double>& wy,
                      const std::vector<double>& wx) {
  double best = 0.0;
  for (int k = 0; k < B.cols(); ++k) {
    double col = 0.0;
    for (int i = 0; i < B.rows(); ++i) {
      col += wy[static_cast<size_t>(i)] * std::abs(B(i, k));
    }
    best = std::max(best, col / wx[static_cast<size_t>(k)]);
  }
  return best;
}

Eigen::MatrixXd kernel_matrix(const KernelGrid& K) {
  const int ny = K.ny(), nx = K.nx();
  Eigen::MatrixXd B(ny, nx);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      B(iy, ix) = 2.0 * K.s_at(iy, ix) * K.wx[static_cast<size_t>(ix)];
    }
  }
  return B;
}

}  // namespace

double r_eval(const PairProblem& pp, double z, double x, int grid_steps) {
  if (x < 0.0 || x > pp.a + 1e-12) {
    throw ConfigError("r_eval: x must lie in [0, a]");
  }
  if (x < 1e-14) return 0.0;
  const double lambda = z * z;
  const double z_abs = std::max(std::abs(z), 1.0);
  const int steps = grid_steps > 0 ? check_explicit_steps(grid_steps, z_abs, x)
                                   : required_steps(z_abs, x, {});
  const auto t1 = solve_psi(pp.q1, pp.h1, lambda, steps, x);
  const auto t2 = solve_psi(pp.q2, pp.h2, lambda, steps, x);
  return -t1.psi.back() * t2.psi.back() + 0.5 * (1.0 + std::cos(2.0 * z * x));
}

KernelGrid build_s(const PairProblem& pp, const KernelOptions& opt) {
  if (opt.ny < 5 || opt.nx < 5 || opt.ny % 2 == 0 || opt.nx % 2 == 0) {
    throw ConfigError("build_s: ny and nx must be odd and >= 5");
  }
  if (!(opt.z_max > 10.0) || !(opt.dz > 0.0)) {
    throw ConfigError("build_s: needs z_max > 10 and dz > 0");
  }
  const double a = pp.a;
  KernelGrid K;
  K.a = a;
  K.h1 = pp.h1;
  K.h2 = pp.h2;
  K.H = pp.H;
  K.y_nodes = linspace(-2.0 * a, 2.0 * a, opt.ny);
  K.x_nodes = linspace(-2.0 * a, 2.0 * a, opt.nx);
  K.wy = trapezoid_weights(K.y_nodes);
  K.wx = trapezoid_weights(K.x_nodes);
  K.z_max = opt.z_max;

  const int nx = opt.nx, ny = opt.ny;
  const int cx = (nx - 1) / 2, cy = (ny - 1) / 2;
  const int mx = cx + 1;  // nodes of t = |x|/2 in [0, a]
  const int my = cy + 1;

  // Jump height c(t)/4 with c(t) = (h1 + h2) - 1/2 int_0^t (q1 + q2).
  std::vector<double> t_nodes(static_cast<size_t>(mx));
  std::vector<double> qsum(static_cast<size_t>(mx));
  for (int k = 0; k < mx; ++k) {
    t_nodes[static_cast<size_t>(k)] = a * static_cast<double>(k) / (mx - 1);
    qsum[static_cast<size_t>(k)] = pp.q1.eval(t_nodes[static_cast<size_t>(k)]) +
                                   pp.q2.eval(t_nodes[static_cast<size_t>(k)]);
  }
  const auto cumq = cumulative_trapezoid(t_nodes, qsum);
  std::vector<double> ctil(static_cast<size_t>(mx));
  for (int k = 0; k < mx; ++k) {
    ctil[static_cast<size_t>(k)] = (pp.h1 + pp.h2) - 0.5 * cumq[static_cast<size_t>(k)];
  }
  K.box_coef.resize(static_cast<size_t>(nx));
  for (int ix = 0; ix < nx; ++ix) {
    K.box_coef[static_cast<size_t>(ix)] = ctil[static_cast<size_t>(std::abs(ix - cx))] / 4.0;
  }

  // Subtracted integrand rho(z, t) = r(z, t) - c(t) sin(2zt) / (2z) on the
  // z quadrature grid (Simpson, even interval count).
  int kz = static_cast<int>(std::lround(opt.z_max / opt.dz));
  if (kz % 2 == 1) ++kz;
  kz = std::max(kz, 16);
  const double dz = opt.z_max / static_cast<double>(kz);
  K.dz = dz;

  std::vector<double> rho(static_cast<size_t>(kz + 1) * static_cast<size_t>(mx));
  std::vector<double> rho_max(static_cast<size_t>(kz + 1), 0.0);
  parallel_for(kz + 1, [&](int k) {
    const double z = dz * static_cast<double>(k);
    const double lambda = z * z;
    const int base = required_steps(std::max(z, 1.0), a, {});
    const int sub = (base + mx - 2) / (mx - 1);
    const int steps = sub * (mx - 1);
    const auto t1 = solve_psi(pp.q1, pp.h1, lambda, steps, a);
    const auto t2 = solve_psi(pp.q2, pp.h2, lambda, steps, a);
    double m = 0.0;
    for (int j = 0; j < mx; ++j) {
      const size_t i = static_cast<size_t>(j) * static_cast<size_t>(sub);
      const double t = t1.nodes[i];
      const double r = -t1.psi[i] * t2.psi[i] + 0.5 * (1.0 + std::cos(2.0 * z * t));
      const double sinc = z > 0.0 ? std::sin(2.0 * z * t) / (2.0 * z) : t;
      const double v = r - ctil[static_cast<size_t>(j)] * sinc;
      rho[static_cast<size_t>(k) * mx + static_cast<size_t>(j)] = v;
      m = std::max(m, std::abs(v));
    }
    rho_max[static_cast<size_t>(k)] = m;
  });

  // Tail estimate: |rho| ~ C / z^2 over the top decade of the z range.
  {
    std::vector<double> c2;
    for (int k = (9 * kz) / 10; k <= kz; ++k) {
      const double z = dz * static_cast<double>(k);
      c2.push_back(rho_max[static_cast<size_t>(k)] * z * z);
    }
    std::sort(c2.begin(), c2.end());
    K.tail_C = c2[c2.size() / 2];
    K.tail_estimate = K.tail_C / opt.z_max;
  }

  // Transpose with Simpson weights folded in: w(k) rho(k, t) / pi.
  std::vector<double> rho_t(static_cast<size_t>(mx) * static_cast<size_t>(kz + 1));
  for (int k = 0; k <= kz; ++k) {
    double w = dz / 3.0;
    if (k > 0 && k < kz) w *= (k % 2 == 1) ? 4.0 : 2.0;
    for (int j = 0; j < mx; ++j) {
      rho_t[static_cast<size_t>(j) * (kz + 1) + static_cast<size_t>(k)] =
          w / kPi * rho[static_cast<size_t>(k) * mx + static_cast<size_t>(j)];
    }
  }
  rho.clear();
  rho.shrink_to_fit();

  // Cosine transform of the remainder on the quarter grid, then mirror.
  std::vector<double> smooth_half(static_cast<size_t>(my) * static_cast<size_t>(mx));
  parallel_for(my, [&](int iy) {
    const double y = K.y_nodes[static_cast<size_t>(cy + iy)];
    std::vector<double> cos_row(static_cast<size_t>(kz + 1));
    for (int k = 0; k <= kz; ++k) {
      cos_row[static_cast<size_t>(k)] = std::cos(dz * static_cast<double>(k) * y);
    }
    for (int j = 0; j < mx; ++j) {
      const double* row = &rho_t[static_cast<size_t>(j) * (kz + 1)];
      double acc = 0.0;
      for (int k = 0; k <= kz; ++k) acc += row[static_cast<size_t>(k)] * cos_row[static_cast<size_t>(k)];
      smooth_half[static_cast<size_t>(iy) * mx + static_cast<size_t>(j)] = acc;
    }
  });

  K.smooth.resize(static_cast<size_t>(ny) * static_cast<size_t>(nx));
  K.values.resize(K.smooth.size());
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int ay = std::abs(iy - cy);
      const int ax = std::abs(ix - cx);
      const double sm = smooth_half[static_cast<size_t>(ay) * mx + static_cast<size_t>(ax)];
      const double val =
          sm + K.box_coef[static_cast<size_t>(ix)] * box_indicator(iy, cy, ny, ix, cx, nx);
      K.smooth[static_cast<size_t>(iy) * nx + static_cast<size_t>(ix)] = sm;
      K.values[static_cast<size_t>(iy) * nx + static_cast<size_t>(ix)] = val;
      K.max_abs = std::max(K.max_abs, std::abs(val));
    }
  }

  if (K.tail_estimate > opt.tail_rel_tol * std::max(K.max_abs, 1e-12)) {
    throw NumericError(
        "build_s: z_max too small, transform tail estimate " +
        std::to_string(K.tail_estimate) + " exceeds tolerance " +
        std::to_string(opt.tail_rel_tol * std::max(K.max_abs, 1e-12)));
  }
  return K;
}

double sup_norm_columns(const KernelGrid& K, double q_exp) {
  if (!(q_exp >= 1.0) && !std::isinf(q_exp)) {
    throw ConfigError("sup_norm_columns: requires q >= 1");
  }
  double best = 0.0;
  for (int ix = 0; ix < K.nx(); ++ix) {
    if (std::isinf(q_exp)) {
      for (int iy = 0; iy < K.ny(); ++iy) {
        best = std::max(best, std::abs(K.s_at(iy, ix)));
      }
    } else {
      double acc = 0.0;
      for (int iy = 0; iy < K.ny(); ++iy) {
        acc += K.wy[static_cast<size_t>(iy)] *
               std::pow(std::abs(K.s_at(iy, ix)), q_exp);
      }
      best = std::max(best, std::pow(acc, 1.0 / q_exp));
    }
  }
  return best;
}

SampledFunction apply_Ts(const KernelGrid& K, const SampledFunction& u) {
  const int ny = K.ny(), nx = K.nx();
  const double b = 2.0 * K.a;
  const double dx = K.x_nodes[1] - K.x_nodes[0];

  std::vector<double> ux(static_cast<size_t>(nx));
  std::vector<double> w(static_cast<size_t>(nx));
  for (int ix = 0; ix < nx; ++ix) {
    ux[static_cast<size_t>(ix)] = u.eval(K.x_nodes[static_cast<size_t>(ix)]);
    w[static_cast<size_t>(ix)] =
        K.box_coef[static_cast<size_t>(ix)] * ux[static_cast<size_t>(ix)];
  }
  // Prefix/suffix trapezoid integrals of the box integrand.
  std::vector<double> suf(static_cast<size_t>(nx), 0.0), pre(static_cast<size_t>(nx), 0.0);
  for (int i = nx - 2; i >= 0; --i) {
    suf[static_cast<size_t>(i)] = suf[static_cast<size_t>(i) + 1] +
                                  0.5 * dx * (w[static_cast<size_t>(i)] + w[static_cast<size_t>(i) + 1]);
  }
  for (int i = 1; i < nx; ++i) {
    pre[static_cast<size_t>(i)] = pre[static_cast<size_t>(i) - 1] +
                                  0.5 * dx * (w[static_cast<size_t>(i) - 1] + w[static_cast<size_t>(i)]);
  }
  auto w_at = [&](double x) {
    double t = (x - K.x_nodes[0]) / dx;
    int i = std::clamp(static_cast<int>(std::floor(t)), 0, nx - 2);
    const double frac = t - static_cast<double>(i);
    return w[static_cast<size_t>(i)] +
           frac * (w[static_cast<size_t>(i) + 1] - w[static_cast<size_t>(i)]);
  };

  std::vector<double> out(static_cast<size_t>(ny), 0.0);
  for (int iy = 0; iy < ny; ++iy) {
    const double ay = std::abs(K.y_nodes[static_cast<size_t>(iy)]);
    double box = 0.0;
    if (ay < b - 1e-15) {
      // right tail [ay, b]
      int jr = static_cast<int>(std::ceil((ay - K.x_nodes[0]) / dx - 1e-9));
      jr = std::clamp(jr, 0, nx - 1);
      const double xr = K.x_nodes[static_cast<size_t>(jr)];
      double right = suf[static_cast<size_t>(jr)];
      if (xr > ay + 1e-15) {
        right += 0.5 * (xr - ay) * (w_at(ay) + w[static_cast<size_t>(jr)]);
      }
      // left tail [-b, -ay]
      int jl = static_cast<int>(std::floor((-ay - K.x_nodes[0]) / dx + 1e-9));
      jl = std::clamp(jl, 0, nx - 1);
      const double xl = K.x_nodes[static_cast<size_t>(jl)];
      double left = pre[static_cast<size_t>(jl)];
      if (-ay > xl + 1e-15) {
        left += 0.5 * (-ay - xl) * (w[static_cast<size_t>(jl)] + w_at(-ay));
      }
      box = left + right;
    }
    double sm = 0.0;
    const double* row = &K.smooth[static_cast<size_t>(iy) * nx];
    for (int ix = 0; ix < nx; ++ix) {
      sm += K.wx[static_cast<size_t>(ix)] * row[ix] * ux[static_cast<size_t>(ix)];
    }
    out[static_cast<size_t>(iy)] = 2.0 * (box + sm);
  }
  return SampledFunction(-b, b, std::move(out));
}

GFunction g_compute(const PairProblem& pp, const KernelGrid& K, double p) {
  const int nx = K.nx();
  const int mx = (nx + 1) / 2;
  const auto dq = pair_dq_half(pp, mx);
  const auto e_dq = extend_parity(dq);
  const auto ts = apply_Ts(K, e_dq);
  GFunction g;
  g.p = p;
  g.y_nodes = K.y_nodes;
  g.values.resize(K.y_nodes.size());
  for (size_t iy = 0; iy < K.y_nodes.size(); ++iy) {
    g.values[iy] = e_dq.eval(K.y_nodes[iy]) - ts.samples[iy];
  }
  return g;
}

SampledFunction GFunction::as_sampled() const {
  return SampledFunction(y_nodes.front(), y_nodes.back(), values);
}

void GFunction::write_csv(std::ostream& os) const {
  os << "y,g\n";
  for (size_t i = 0; i < y_nodes.size(); ++i) {
    csv_cell(os, y_nodes[i]);
    csv_cell(os, values[i], true);
  }
}

SupportCheck support_check(const KernelGrid& K, int guard_cells) {
  SupportCheck sc;
  sc.guard_cells = guard_cells;
  const int ny = K.ny(), nx = K.nx();
  const double dy = K.y_nodes[1] - K.y_nodes[0];
  for (int iy = 0; iy < ny; ++iy) {
    const double ay = std::abs(K.y_nodes[static_cast<size_t>(iy)]);
    for (int ix = 0; ix < nx; ++ix) {
      const double ax = std::abs(K.x_nodes[static_cast<size_t>(ix)]);
      const double v = std::abs(K.s_at(iy, ix));
      sc.max_inside = std::max(sc.max_inside, v);
      if (ay >= ax + guard_cells * dy - 1e-15) {
        sc.max_outside = std::max(sc.max_outside, v);
      }
    }
  }
  sc.ratio = sc.max_outside / std::max(sc.max_inside, 1e-300);
  return sc;
}

HolderCheck holder_bound_check(const PairProblem& pp, const KernelGrid& K,
                               double p) {
  if (!(p >= 1.0)) throw ConfigError("holder_bound_check: requires p >= 1");
  HolderCheck hc;
  hc.p = p;
  const int nx = K.nx();
  const int mx = (nx + 1) / 2;
  const auto dq = pair_dq_half(pp, mx);
  hc.dq_l1 = lp_norm(dq, 1.0);
  const auto e_dq = extend_parity(dq);
  const auto ts = apply_Ts(K, e_dq);
  std::vector<double> integrand(ts.samples.size());
  for (size_t i = 0; i < ts.samples.size(); ++i) {
    integrand[i] = std::pow(std::abs(0.5 * ts.samples[i]), p);
  }
  hc.lhs = trapezoid(SampledFunction(-2.0 * K.a, 2.0 * K.a, integrand));
  hc.sup_s_2p = sup_norm_columns(K, 2.0 * p);
  const double core =
      std::sqrt(K.a) * std::pow(hc.dq_l1, p) * std::pow(hc.sup_s_2p, p);
  hc.rhs = std::pow(2.0, 2.0 * p + 1.0) * core;
  hc.rhs_small_const = std::pow(2.0, p + 1.0) * core;
  hc.slack = hc.rhs - hc.lhs;
  hc.holds = hc.lhs <= hc.rhs * (1.0 + 1e-9) + 1e-12;
  hc.small_const_holds = hc.lhs <= hc.rhs_small_const * (1.0 + 1e-9) + 1e-12;
  return hc;
}

FourierCheck fourier_consistency(const PairProblem& pp, const KernelGrid& K,
                                 const GFunction& g,
                                 const std::vector<double>& z_list,
                                 double tol_coeff) {
  if (g.y_nodes.size() != K.y_nodes.size()) {
    throw ConfigError("fourier_consistency: g grid does not match the kernel");
  }
  FourierCheck fc;
  fc.rows.resize(z_list.size());
  const double dy = K.y_nodes[1] - K.y_nodes[0];
  parallel_for(static_cast<int>(z_list.size()), [&](int i) {
    const double z = z_list[static_cast<size_t>(i)];
    std::vector<double> re(g.values.size()), im(g.values.size());
    for (size_t k = 0; k < g.values.size(); ++k) {
      re[k] = g.values[k] * std::cos(z * g.y_nodes[k]);
      im[k] = g.values[k] * std::sin(z * g.y_nodes[k]);
    }
    FourierCheckRow row;
    row.z = z;
    row.g_hat_re = simpson_uniform(dy, re);
    row.g_hat_im = simpson_uniform(dy, im);
    row.f = f_eval(pp, z);
    row.dev = std::hypot(row.g_hat_re - row.f, row.g_hat_im);
    fc.rows[static_cast<size_t>(i)] = row;
  });
  for (const auto& row : fc.rows) {
    fc.max_dev = std::max(fc.max_dev, row.dev);
    fc.max_abs_f = std::max(fc.max_abs_f, std::abs(row.f));
  }
  fc.tol = tol_coeff * (1.0 + fc.max_abs_f);
  fc.within = fc.max_dev <= fc.tol;
  return fc;
}

double fourier_roundtrip_dev(const PairProblem& pp, const KernelGrid& K,
                             double z, int ix) {
  if (ix < 0 || ix >= K.nx()) throw ConfigError("fourier_roundtrip_dev: bad ix");
  const double ax = std::abs(K.x_nodes[static_cast<size_t>(ix)]);
  const double dy = K.y_nodes[1] - K.y_nodes[0];
  std::vector<double> integrand(K.y_nodes.size());
  for (size_t iy = 0; iy < K.y_nodes.size(); ++iy) {
    integrand[iy] = K.smooth[iy * static_cast<size_t>(K.nx()) + static_cast<size_t>(ix)] *
                    std::cos(z * K.y_nodes[iy]);
  }
  const double smooth_part = simpson_uniform(dy, integrand);
  const double box_part =
      K.box_coef[static_cast<size_t>(ix)] *
      (z > 1e-12 ? 2.0 * std::sin(z * ax) / z : 2.0 * ax);
  const double target = r_eval(pp, z, ax / 2.0);
  return std::abs(box_part + smooth_part - target);
}

ContractionCheck contraction_check(const KernelGrid& K, int n_max,
                                   unsigned long long probe_seed) {
  if (K.ny() != K.nx()) {
    throw ConfigError("contraction_check: needs matching y and x grids");
  }
  if (n_max < 1 || n_max > 20) {
    throw ConfigError("contraction_check: n_max must be in [1, 20]");
  }
  ContractionCheck cc;
  cc.sup_s_l2 = sup_norm_columns(K, 2.0);
  const double base = 4.0 * std::sqrt(K.a) * cc.sup_s_l2;
  const Eigen::MatrixXd B = kernel_matrix(K);

  // Deterministic probe set: constant, hat, signed noise.
  const int n = K.ny();
  std::vector<Eigen::VectorXd> probes;
  probes.emplace_back(Eigen::VectorXd::Ones(n));
  Eigen::VectorXd hat(n);
  for (int i = 0; i < n; ++i) {
    hat(i) = 1.0 - std::abs(K.y_nodes[static_cast<size_t>(i)]) / (2.0 * K.a);
  }
  probes.push_back(hat);
  std::mt19937_64 rng(probe_seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd noise(n);
  for (int i = 0; i < n; ++i) noise(i) = unif(rng);
  probes.push_back(noise);

  auto weighted_l1 = [&](const Eigen::VectorXd& v) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += K.wy[static_cast<size_t>(i)] * std::abs(v(i));
    return acc;
  };

  Eigen::MatrixXd Bn = B;
  std::vector<Eigen::VectorXd> pv = probes;
  cc.all_hold = true;
  for (int m = 1; m <= n_max; ++m) {
    if (m > 1) Bn = (B * Bn).eval();
    ContractionRow row;
    row.n = m;
    row.discrete_norm = weighted_norm1(Bn, K.wy, K.wx);
    row.bound = std::pow(base, m) / std::sqrt(std::tgamma(static_cast<double>(m) + 1.0));
    row.holds = row.discrete_norm <= row.bound * (1.0 + 1e-9);
    cc.all_hold = cc.all_hold && row.holds;
    for (size_t pi = 0; pi < pv.size(); ++pi) {
      pv[pi] = (B * pv[pi]).eval();
      const double denom = weighted_l1(probes[pi]);
      if (denom > 0.0) {
        cc.probe_max_ratio =
            std::max(cc.probe_max_ratio, weighted_l1(pv[pi]) / denom / row.bound);
      }
    }
    cc.rows.push_back(row);
  }
  return cc;
}

FixedPointCheck fixed_point_check(const PairProblem& pp, const KernelGrid& K) {
  if (K.ny() != K.nx()) {
    throw ConfigError("fixed_point_check: needs matching y and x grids");
  }
  const int n = K.ny();
  const auto g = g_compute(pp, K);
  const Eigen::MatrixXd B = kernel_matrix(K);
  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) - B;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  Eigen::VectorXd gv(n);
  for (int i = 0; i < n; ++i) gv(i) = g.values[static_cast<size_t>(i)];
  const Eigen::VectorXd u = lu.solve(gv);

  const int mx = (n + 1) / 2;
  const auto e_dq = extend_parity(pair_dq_half(pp, mx));
  double err = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    const double target = e_dq.samples[static_cast<size_t>(i)];
    err += K.wy[static_cast<size_t>(i)] * std::abs(u(i) - target);
    scale += K.wy[static_cast<size_t>(i)] * std::abs(target);
  }
  FixedPointCheck fp;
  fp.rel_err_l1 = err / std::max(scale, 1e-300);
  const Eigen::MatrixXd Minv = lu.inverse();
  fp.cond_estimate = weighted_norm1(M, K.wy, K.wx) * weighted_norm1(Minv, K.wy, K.wx);
  return fp;
}

std::string KernelGrid::meta_json() const {
  nlohmann::json j;
  j["a"] = a;
  j["h1"] = h1;
  j["h2"] = h2;
  j["H"] = H;
  j["ny"] = ny();
  j["nx"] = nx();
  j["y_lo"] = y_nodes.front();
  j["y_hi"] = y_nodes.back();
  j["x_lo"] = x_nodes.front();
  j["x_hi"] = x_nodes.back();
  j["z_max"] = z_max;
  j["dz"] = dz;
  j["tail_C"] = tail_C;
  j["tail_estimate"] = tail_estimate;
  j["max_abs"] = max_abs;
  j["layout"] = "row-major, rows indexed by y, columns by x";
  return j.dump(2) + "\n";
}

void KernelGrid::write_matrix_csv(std::ostream& os) const {
  char buf[40];
  for (int iy = 0; iy < ny(); ++iy) {
    for (int ix = 0; ix < nx(); ++ix) {
      std::snprintf(buf, sizeof(buf), "%.17g", s_at(iy, ix));
      os << buf << (ix + 1 == nx() ? "\n" : ",");
    }
  }
}

}  // namespace slgate
