// SPDX-License-Identifier: Apache-2.0
#include "slgate/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "slgate/errors.hpp"
#include "slgate/potentials.hpp"

namespace slgate {

namespace {

// Quadrature-grade step policy: certificate integrands oscillate at
// frequency ~2z, so the trapezoid grid is kept much denser than the
// integrator needs for phase accuracy alone.
int cert_steps(double z_abs, double length) {
  const double dens = std::max(4000.0, 3700.0 * std::max(z_abs, 1.0)) * length;
  return std::max(64, static_cast<int>(std::ceil(dens)));
}

void csv_cell(std::ostream& os, double v, bool last = false) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf << (last ? "\n" : ",");
}

}  // namespace

PairProblem make_pair(SampledFunction q1, double h1, SampledFunction q2,
                      double h2, double H, double a, double agree_tol) {
  q1.validate();
  q2.validate();
  if (std::abs(q1.x_lo) > 1e-12 || std::abs(q1.x_hi - 1.0) > 1e-12 ||
      std::abs(q2.x_lo) > 1e-12 || std::abs(q2.x_hi - 1.0) > 1e-12) {
    throw ConfigError("make_pair: potentials must live on [0, 1]");
  }
  if (!(a > 0.0) || a > 0.5 + 1e-12) {
    throw ConfigError("make_pair: requires 0 < a <= 1/2");
  }
  PairProblem pp;
  pp.tail_dev = max_dev_on(q1, q2, a, 1.0);
  pp.agree_on_tail = pp.tail_dev <= agree_tol;
  pp.q1 = std::move(q1);
  pp.q2 = std::move(q2);
  pp.h1 = h1;
  pp.h2 = h2;
  pp.H = H;
  pp.a = a;
  return pp;
}

double pair_kappa(const PairProblem& pp) {
  const int n = std::max(pp.q1.grid_n(), pp.q2.grid_n());
  const auto x = linspace(0.0, 1.0, n);
  std::vector<double> d(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    d[i] = pp.q2.eval(x[i]) - pp.q1.eval(x[i]);
  }
  return 2.0 * (pp.h1 - pp.h2) + trapezoid(x, d);
}

double f_eval_lambda(const PairProblem& pp, double lambda, int grid_steps) {
  const double z_abs = std::sqrt(std::max(std::abs(lambda), 1.0));
  const int steps = grid_steps > 0
                        ? check_explicit_steps(grid_steps, z_abs, pp.a)
                        : cert_steps(z_abs, pp.a);
  const auto t1 = solve_psi(pp.q1, pp.h1, lambda, steps, pp.a);
  const auto t2 = solve_psi(pp.q2, pp.h2, lambda, steps, pp.a);
  std::vector<double> g(t1.nodes.size());
  for (size_t i = 0; i < t1.nodes.size(); ++i) {
    const double dq = pp.q1.eval(t1.nodes[i]) - pp.q2.eval(t1.nodes[i]);
    g[i] = (-1.0 + 2.0 * t1.psi[i] * t2.psi[i]) * dq;
  }
  return 4.0 * trapezoid(t1.nodes, g);
}

double f_eval(const PairProblem& pp, double z, int grid_steps) {
  return f_eval_lambda(pp, z * z, grid_steps);
}

CertificateEntry lagrange_check(const PairProblem& pp, double z,
                                int grid_steps) {
  const double lambda = z * z;
  const double z_abs = std::sqrt(std::max(std::abs(lambda), 1.0));
  const int steps = grid_steps > 0
                        ? check_explicit_steps(grid_steps, z_abs, 1.0)
                        : cert_steps(z_abs, 1.0);
  const auto t1 = solve_psi(pp.q1, pp.h1, lambda, steps, 1.0, pp.a);
  const auto t2 = solve_psi(pp.q2, pp.h2, lambda, steps, 1.0, pp.a);

  std::vector<double> prod(t1.nodes.size());
  std::vector<double> cert;
  std::vector<double> cert_nodes;
  for (size_t i = 0; i < t1.nodes.size(); ++i) {
    const double x = t1.nodes[i];
    const double dq = pp.q1.eval(x) - pp.q2.eval(x);
    prod[i] = dq * t1.psi[i] * t2.psi[i];
    if (x <= pp.a + 1e-14) {
      cert_nodes.push_back(x);
      cert.push_back((-1.0 + 2.0 * t1.psi[i] * t2.psi[i]) * dq);
    }
  }
  CertificateEntry e;
  e.z = z;
  e.lambda = lambda;
  e.f = 4.0 * trapezoid(cert_nodes, cert);
  e.lagrange_lhs = trapezoid(t1.nodes, prod);
  const double r_end = t2.psi.back() * t1.dpsi.back() - t1.psi.back() * t2.dpsi.back();
  e.lagrange_rhs = r_end - (pp.h2 - pp.h1);
  e.lagrange_dev = std::abs(e.lagrange_lhs - e.lagrange_rhs);
  return e;
}

CertificateReport vanish_on_common(const PairProblem& pp, const SubSpectrum& S,
                                   double match_tol) {
  if (S.indices.empty()) throw ConfigError("vanish_on_common: empty sub-spectrum");
  const int j_max = *std::max_element(S.indices.begin(), S.indices.end());
  const Spectrum sp1 = compute_spectrum({pp.q1, {pp.h1, pp.H}}, j_max);
  const Spectrum sp2 = compute_spectrum({pp.q2, {pp.h2, pp.H}}, j_max);

  CertificateReport rep;
  rep.kappa = pair_kappa(pp);
  rep.f_offset = 4.0 * rep.kappa;
  for (size_t j = 0; j < S.indices.size(); ++j) {
    const int m = S.indices[j];
    const double lam1 = sp1.eigenvalues[static_cast<size_t>(m)];
    const double lam2 = sp2.eigenvalues[static_cast<size_t>(m)];
    const double scale = std::max(1.0, std::abs(lam1));
    const double gap = std::abs(lam1 - lam2);
    if (gap > 1e-3 * scale) {
      throw NumericError(
          "vanish_on_common: eigenvalues fail to match at index m=" +
          std::to_string(m));
    }
    const double s_back = S.values[j] - S.shift;
    if (std::abs(s_back - lam1) > 1e-3 * scale &&
        std::abs(s_back - lam2) > 1e-3 * scale) {
      throw ConfigError(
          "vanish_on_common: sub-spectrum value does not belong to the pair "
          "spectra at index m=" + std::to_string(m));
    }
    const double lam = 0.5 * (lam1 + lam2);
    CertificateEntry e;
    e.lambda = lam;
    e.z = lam >= 0.0 ? std::sqrt(lam) : std::numeric_limits<double>::quiet_NaN();
    e.f = f_eval_lambda(pp, lam);
    e.matched_gap = gap;
    if (gap > match_tol * scale) {
      rep.notes.push_back("loose eigenvalue match at index m=" +
                          std::to_string(m));
    }
    rep.entries.push_back(e);
    rep.max_f_dev = std::max(rep.max_f_dev, std::abs(e.f - rep.f_offset));
  }
  return rep;
}

std::string CertificateReport::to_json() const {
  nlohmann::json j;
  j["kappa"] = kappa;
  j["f_offset"] = f_offset;
  j["max_f_dev"] = max_f_dev;
  j["max_lagrange_dev"] = max_lagrange_dev;
  j["notes"] = notes;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je;
    je["lambda"] = e.lambda;
    je["f"] = e.f;
    if (std::isfinite(e.matched_gap)) je["matched_gap"] = e.matched_gap;
    if (std::isfinite(e.lagrange_dev)) {
      je["lagrange_lhs"] = e.lagrange_lhs;
      je["lagrange_rhs"] = e.lagrange_rhs;
      je["lagrange_dev"] = e.lagrange_dev;
    }
    j["entries"].push_back(je);
  }
  return j.dump(2) + "\n";
}

void CertificateReport::write_csv(std::ostream& os) const {
  os << "z,lambda,f,lagrange_lhs,lagrange_rhs,lagrange_dev,matched_gap\n";
  for (const auto& e : entries) {
    csv_cell(os, e.z);
    csv_cell(os, e.lambda);
    csv_cell(os, e.f);
    csv_cell(os, e.lagrange_lhs);
    csv_cell(os, e.lagrange_rhs);
    csv_cell(os, e.lagrange_dev);
    csv_cell(os, e.matched_gap, true);
  }
}

}  // namespace slgate
