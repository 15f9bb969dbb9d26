// SPDX-License-Identifier: Apache-2.0
#include "slgate/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "slgate/errors.hpp"

namespace slgate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void csv_cell(std::ostream& os, double v, bool last = false) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf << (last ? "\n" : ",");
}

// Least squares y ~ intercept + slope * x.
std::pair<double, double> fit_line(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return {y.empty() ? 0.0 : y[0], 0.0};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) return {sy / n, 0.0};
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;
  return {intercept, slope};
}

size_t top_half_start(size_t n) { return std::max<size_t>(1, n / 2); }

}  // namespace

double HypothesisConfig::q_conj() const {
  if (!(p >= 1.0)) throw ConfigError("HypothesisConfig: requires p >= 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

SubSpectrum make_subspectrum(const Spectrum& parent,
                             const std::vector<int>& indices,
                             double positivity_margin) {
  if (indices.empty()) throw ConfigError("make_subspectrum: empty index list");
  const int n = static_cast<int>(parent.eigenvalues.size());
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= n) {
      throw ConfigError("make_subspectrum: index out of range: " +
                        std::to_string(indices[i]));
    }
    if (i > 0 && indices[i] <= indices[i - 1]) {
      throw ConfigError("make_subspectrum: indices must be strictly increasing");
    }
  }
  SubSpectrum S;
  S.indices = indices;
  const double lam_min = parent.eigenvalues.front();
  S.shift = lam_min <= 0.0 ? -lam_min + positivity_margin : 0.0;
  S.parent_values.reserve(parent.eigenvalues.size());
  for (double lam : parent.eigenvalues) S.parent_values.push_back(lam + S.shift);
  S.values.reserve(indices.size());
  for (int m : indices) S.values.push_back(S.parent_values[static_cast<size_t>(m)]);
  for (double s : S.values) {
    if (!(s > 0.0)) {
      throw NumericError("make_subspectrum: non-positive value after shift");
    }
  }
  return S;
}

std::vector<int> scenario_indices(ScenarioKind kind, int parent_size, int k) {
  if (parent_size <= 0) throw ConfigError("scenario_indices: empty parent");
  std::vector<int> idx;
  switch (kind) {
    case ScenarioKind::even:
      for (int j = 0; j < parent_size; j += 2) idx.push_back(j);
      break;
    case ScenarioKind::odd:
      for (int j = 1; j < parent_size; j += 2) idx.push_back(j);
      break;
    case ScenarioKind::every_k:
      if (k < 1) throw ConfigError("scenario_indices: k must be >= 1");
      for (int j = 0; j < parent_size; j += k) idx.push_back(j);
      break;
  }
  if (idx.empty()) throw ConfigError("scenario_indices: selection is empty");
  return idx;
}

SubSpectrum subspectrum_scenarios(const Spectrum& parent, ScenarioKind kind,
                                  int k) {
  return make_subspectrum(
      parent, scenario_indices(kind, static_cast<int>(parent.eigenvalues.size()), k));
}

int n_count(const std::vector<double>& sorted_abs, double t) {
  if (!std::is_sorted(sorted_abs.begin(), sorted_abs.end(),
                      [](double u, double v) { return std::abs(u) < std::abs(v); })) {
    throw ConfigError("n_count: input must be sorted by absolute value");
  }
  const auto it = std::partition_point(
      sorted_abs.begin(), sorted_abs.end(),
      [t](double v) { return std::abs(v) <= t; });
  return static_cast<int>(std::distance(sorted_abs.begin(), it));
}

double big_N_closed(const std::vector<double>& sqrt_values, int j) {
  if (j < 0 || j >= static_cast<int>(sqrt_values.size())) {
    throw ConfigError("big_N_closed: index out of range");
  }
  double acc = 0.0;
  for (int k = 0; k < j; ++k) {
    const double r = sqrt_values[static_cast<size_t>(k)];
    if (!(r > 0.0)) throw ConfigError("big_N_closed: needs positive sqrt values");
    acc += std::log(r);
  }
  const double rj = sqrt_values[static_cast<size_t>(j)];
  if (!(rj > 0.0)) throw ConfigError("big_N_closed: needs positive sqrt values");
  return 2.0 * (static_cast<double>(j) * std::log(rj) - acc);
}

CountingReport check_H1(const SubSpectrum& S, const HypothesisConfig& cfg) {
  if (!(cfg.a > 0.0) || cfg.a > 0.5 + 1e-12) {
    throw ConfigError("check_H1: requires 0 < a <= 1/2");
  }
  (void)cfg.q_conj();  // validates p
  CountingReport rep;
  rep.check = "H1";
  rep.a = cfg.a;
  rep.p = cfg.p;
  rep.shift = S.shift;
  const double lower_const = 1.0 / (2.0 * cfg.p) - 2.0 * cfg.a;
  double c_max = -std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < S.values.size(); ++j) {
    CountingRow row;
    row.j = static_cast<int>(j);
    row.s = S.values[j];
    row.sqrt_s = std::sqrt(S.values[j]);
    row.n_S = n_count(S.values, row.s);
    row.n_sigma = n_count(S.parent_values, row.s);
    row.h1_gap = row.n_S - 2.0 * cfg.a * row.n_sigma;
    row.h1_lower_margin = row.h1_gap - lower_const;
    c_max = std::max(c_max, row.h1_gap);
    if (row.h1_lower_margin < -cfg.tol) {
      if (row.j >= cfg.j_threshold) {
        rep.passed = false;
        rep.notes.push_back("H1 lower bound fails at j=" + std::to_string(row.j));
      } else {
        rep.notes.push_back("H1 lower bound warning at j=" +
                            std::to_string(row.j) + " (below threshold)");
      }
    }
    rep.rows.push_back(row);
  }
  rep.C_fitted = c_max;
  return rep;
}

CountingReport check_H2(const SubSpectrum& S, const HypothesisConfig& cfg) {
  if (!(cfg.a > 0.0) || cfg.a > 0.5 + 1e-12) {
    throw ConfigError("check_H2: requires 0 < a <= 1/2");
  }
  (void)cfg.q_conj();
  if (S.values.size() < 10) {
    throw NumericError("check_H2: too few points to fit (need >= 10)");
  }
  CountingReport rep;
  rep.check = "H2";
  rep.a = cfg.a;
  rep.p = cfg.p;
  rep.shift = S.shift;
  const double dens = kPi / (2.0 * cfg.a);
  const size_t n = S.values.size();
  std::vector<double> u(n);
  double d_min = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < n; ++j) {
    CountingRow row;
    row.j = static_cast<int>(j);
    row.s = S.values[j];
    row.sqrt_s = std::sqrt(S.values[j]);
    row.h2_lower_gap = row.sqrt_s - dens * static_cast<double>(j);
    u[j] = dens * (static_cast<double>(j) + 1.0 - 1.0 / (2.0 * cfg.p)) - row.sqrt_s;
    row.h2_upper_slack = u[j];
    d_min = std::min(d_min, row.h2_lower_gap);
    rep.rows.push_back(row);
  }
  rep.D_fitted = d_min;

  // u_j ~ u_inf + c / j over the top half of the range.
  std::vector<double> xs, ys;
  for (size_t j = top_half_start(n); j < n; ++j) {
    xs.push_back(1.0 / static_cast<double>(j));
    ys.push_back(u[j]);
  }
  const auto [u_inf, c_fit] = fit_line(xs, ys);
  rep.h2_limit_slack = u_inf;
  rep.h2_c_over_j = c_fit;
  for (size_t j = 1; j < n; ++j) {
    const double resid = u[j] + c_fit / static_cast<double>(j);
    rep.rows[j].h2_fit_residual = resid;
    if (resid < -cfg.fit_tol) {
      rep.passed = false;
      rep.notes.push_back("H2 upper bound fails at j=" + std::to_string(j));
    }
  }

  // Step-3 style bridge: j+1 vs 2a (sqrt(s_j)/pi + 1) with the same kind of
  // fitted 1/j correction; constants reported for inspection.
  std::vector<double> xs3, ys3;
  double c3_max = -std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < n; ++j) {
    const double weyl = 2.0 * cfg.a * (rep.rows[j].sqrt_s / kPi + 1.0);
    const double e_low = static_cast<double>(j + 1) - weyl -
                         (1.0 / (2.0 * cfg.p) - 2.0 * cfg.a);
    c3_max = std::max(c3_max, static_cast<double>(j + 1) - weyl);
    if (j >= top_half_start(n)) {
      xs3.push_back(1.0 / static_cast<double>(j));
      ys3.push_back(e_low);
    }
  }
  rep.s3_lower_const = fit_line(xs3, ys3).first;
  rep.s3_upper_const = c3_max;
  if (rep.s3_lower_const < -cfg.fit_tol) {
    rep.notes.push_back("step-3 lower slack constant is negative");
  }
  return rep;
}

CountingReport check_HL(const SubSpectrum& S, const HypothesisConfig& cfg) {
  if (!(cfg.a > 0.0) || cfg.a > 0.5 + 1e-12) {
    throw ConfigError("check_HL: requires 0 < a <= 1/2");
  }
  const double q_conj = cfg.q_conj();
  const double ln_coeff = std::isinf(q_conj) ? 0.0 : 1.0 / q_conj;
  CountingReport rep;
  rep.check = "HL";
  rep.a = cfg.a;
  rep.p = cfg.p;
  rep.shift = S.shift;
  const size_t n = S.values.size();
  std::vector<double> sqrt_s(n);
  for (size_t j = 0; j < n; ++j) sqrt_s[j] = std::sqrt(S.values[j]);
  double v_min = std::numeric_limits<double>::infinity();
  std::vector<double> xs, ys;
  for (size_t j = 0; j < n; ++j) {
    CountingRow row;
    row.j = static_cast<int>(j);
    row.s = S.values[j];
    row.sqrt_s = sqrt_s[j];
    row.big_n = big_N_closed(sqrt_s, static_cast<int>(j));
    row.v = row.big_n - (4.0 * cfg.a / kPi) * sqrt_s[j] +
            ln_coeff * std::log(sqrt_s[j]);
    v_min = std::min(v_min, row.v);
    if (j >= top_half_start(n)) {
      xs.push_back(static_cast<double>(j));
      ys.push_back(row.v);
    }
    rep.rows.push_back(row);
  }
  rep.hl_min_v = v_min;
  rep.hl_trend_slope = xs.size() >= 2 ? fit_line(xs, ys).second : 0.0;
  if (!std::isfinite(v_min)) {
    rep.passed = false;
    rep.notes.push_back("HL sequence not finite");
  } else if (rep.hl_trend_slope < -cfg.fit_tol) {
    rep.passed = false;
    rep.notes.push_back("HL sequence trend decreasing");
  }
  return rep;
}

std::string CountingReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["a"] = a;
  j["p"] = p;
  j["shift"] = shift;
  j["passed"] = passed;
  j["notes"] = notes;
  auto put = [&j](const char* key, double v) {
    if (std::isfinite(v)) j[key] = v;
  };
  put("C_fitted", C_fitted);
  put("D_fitted", D_fitted);
  put("h2_limit_slack", h2_limit_slack);
  put("h2_c_over_j", h2_c_over_j);
  put("s3_lower_const", s3_lower_const);
  put("s3_upper_const", s3_upper_const);
  put("hl_min_v", hl_min_v);
  put("hl_trend_slope", hl_trend_slope);
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["j"] = r.j;
    row["s"] = r.s;
    row["n_S"] = r.n_S;
    row["n_sigma"] = r.n_sigma;
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

void CountingReport::write_csv(std::ostream& os) const {
  os << "j,s,sqrt_s,n_S,n_sigma,h1_gap,h1_lower_margin,h2_lower_gap,"
        "h2_upper_slack,h2_fit_residual,big_n,v\n";
  for (const auto& r : rows) {
    os << r.j << ",";
    csv_cell(os, r.s);
    csv_cell(os, r.sqrt_s);
    os << r.n_S << "," << r.n_sigma << ",";
    csv_cell(os, r.h1_gap);
    csv_cell(os, r.h1_lower_margin);
    csv_cell(os, r.h2_lower_gap);
    csv_cell(os, r.h2_upper_slack);
    csv_cell(os, r.h2_fit_residual);
    csv_cell(os, r.big_n);
    csv_cell(os, r.v, true);
  }
}

}  // namespace slgate
