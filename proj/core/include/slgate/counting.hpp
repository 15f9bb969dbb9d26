// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "slgate/sturm.hpp"

namespace slgate {

// Sub-collection S = {s_j} of a full spectrum sigma, both shifted by the
// same constant so that every retained value is strictly positive. The
// shift is recorded and reported, never silent.
struct SubSpectrum {
  std::vector<int> indices;           // m_j into the parent spectrum
  std::vector<double> values;         // s_j, strictly increasing, all > 0
  std::vector<double> parent_values;  // shifted parent eigenvalues
  double shift = 0.0;
};

// Shift policy: if the parent minimum is <= 0, shift by -min + margin.
SubSpectrum make_subspectrum(const Spectrum& parent,
                             const std::vector<int>& indices,
                             double positivity_margin = 1e-8);

enum class ScenarioKind { even, odd, every_k };

std::vector<int> scenario_indices(ScenarioKind kind, int parent_size, int k = 1);
SubSpectrum subspectrum_scenarios(const Spectrum& parent, ScenarioKind kind,
                                  int k = 1);

struct HypothesisConfig {
  double a = 0.25;      // interval fraction, 0 < a <= 1/2
  double p = 1.0;       // integrability exponent, p >= 1
  int j_threshold = 5;  // below: counting violations warn; above: fail
  double tol = 1e-9;    // slack tolerance for exact-arithmetic margins
  double fit_tol = 1e-3;

  double q_conj() const;  // p/(p-1); infinity at p = 1
};

// Counting function n(t) = #{ alpha_j : |alpha_j| <= t } for a list sorted
// by absolute value.
int n_count(const std::vector<double>& sorted_abs, double t);

// N(R) = integral_0^R n_{S^{1/2}}(t)/t dt at R = sqrt(s_j), via the exact
// summed form 2 ( j log sqrt(s_j) - sum_{k<j} log sqrt(s_k) ).
double big_N_closed(const std::vector<double>& sqrt_values, int j);

struct CountingRow {
  int j = 0;
  double s = 0.0;
  double sqrt_s = 0.0;
  int n_S = 0;
  int n_sigma = 0;
  double h1_lower_margin = std::numeric_limits<double>::quiet_NaN();
  double h1_gap = std::numeric_limits<double>::quiet_NaN();  // n_S - 2a n_sigma
  double h2_lower_gap = std::numeric_limits<double>::quiet_NaN();
  double h2_upper_slack = std::numeric_limits<double>::quiet_NaN();
  double h2_fit_residual = std::numeric_limits<double>::quiet_NaN();
  double v = std::numeric_limits<double>::quiet_NaN();  // Levinson sequence
  double big_n = std::numeric_limits<double>::quiet_NaN();
};

struct CountingReport {
  std::string check;  // "H1", "H2" or "HL"
  double a = 0.0, p = 0.0;
  double shift = 0.0;
  std::vector<CountingRow> rows;

  double C_fitted = std::numeric_limits<double>::quiet_NaN();
  double D_fitted = std::numeric_limits<double>::quiet_NaN();
  double h2_limit_slack = std::numeric_limits<double>::quiet_NaN();
  double h2_c_over_j = std::numeric_limits<double>::quiet_NaN();
  double s3_lower_const = std::numeric_limits<double>::quiet_NaN();
  double s3_upper_const = std::numeric_limits<double>::quiet_NaN();
  double hl_min_v = std::numeric_limits<double>::quiet_NaN();
  double hl_trend_slope = std::numeric_limits<double>::quiet_NaN();

  bool passed = true;
  std::vector<std::string> notes;

  std::string to_json() const;
  void write_csv(std::ostream& os) const;
};

// Two-sided counting inequality (H1) at the points t = s_j.
CountingReport check_H1(const SubSpectrum& S, const HypothesisConfig& cfg);

// Gap/density bounds (H2) on sqrt(s_j), with the O(1/j) correction fitted
// over the top half of the index range. Needs at least 10 points.
CountingReport check_H2(const SubSpectrum& S, const HypothesisConfig& cfg);

// Levinson-style lower bound: v_j = N(sqrt(s_j)) - (4a/pi) sqrt(s_j)
// + (1/q) log sqrt(s_j) stays bounded below on a completeness-adequate S.
CountingReport check_HL(const SubSpectrum& S, const HypothesisConfig& cfg);

}  // namespace slgate
