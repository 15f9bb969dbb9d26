// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "slgate/counting.hpp"
#include "slgate/sturm.hpp"

namespace slgate {

// Two operators sharing the right boundary constant H, whose potentials
// agree on [a, 1]. The deviation on the tail is measured at construction
// and reported, not silently accepted.
struct PairProblem {
  SampledFunction q1, q2;  // on [0, 1]
  double h1 = 0.0, h2 = 0.0, H = 0.0;
  double a = 0.5;
  double tail_dev = 0.0;
  bool agree_on_tail = true;
};

PairProblem make_pair(SampledFunction q1, double h1, SampledFunction q2,
                      double h2, double H, double a, double agree_tol = 1e-9);

// kappa = 2 (h1 - h2) + integral_0^1 (q2 - q1).
double pair_kappa(const PairProblem& pp);

struct CertificateEntry {
  double z = 0.0;
  double lambda = 0.0;
  double f = 0.0;
  double lagrange_lhs = std::numeric_limits<double>::quiet_NaN();
  double lagrange_rhs = std::numeric_limits<double>::quiet_NaN();
  double lagrange_dev = std::numeric_limits<double>::quiet_NaN();
  double matched_gap = std::numeric_limits<double>::quiet_NaN();
};

struct CertificateReport {
  double kappa = 0.0;
  double f_offset = 0.0;  // 4 kappa: the constant f attains on shared eigenvalues
  std::vector<CertificateEntry> entries;
  double max_f_dev = 0.0;
  double max_lagrange_dev = 0.0;
  std::vector<std::string> notes;

  std::string to_json() const;
  void write_csv(std::ostream& os) const;
};

// f(z) = 4 integral_0^a (-1 + 2 psi_1 psi_2)(q1 - q2) dx at lambda = z^2.
// The lambda form accepts negative spectral parameters as well.
double f_eval(const PairProblem& pp, double z, int grid_steps = 0);
double f_eval_lambda(const PairProblem& pp, double lambda, int grid_steps = 0);

// Lagrange identity: integral_0^1 (q1 - q2) psi_1 psi_2 dx equals
// (psi_2 psi_1' - psi_1 psi_2')(1) - (h2 - h1). Both sides from one pass;
// the deviation tracks quadrature plus integration error.
CertificateEntry lagrange_check(const PairProblem& pp, double z,
                                int grid_steps = 0);

// Evaluates f on shared eigenvalues described by S (indices into both
// operators' spectra): f must sit at 4 kappa there. Eigenvalue agreement
// between the two operators is verified; loose matches are flagged in the
// report, gross mismatches throw.
CertificateReport vanish_on_common(const PairProblem& pp, const SubSpectrum& S,
                                   double match_tol = 1e-7);

}  // namespace slgate
