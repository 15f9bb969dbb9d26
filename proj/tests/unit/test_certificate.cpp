// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "slgate/certificate.hpp"
#include "slgate/errors.hpp"

using namespace slgate;
using namespace slgate::testing;

TEST_CASE("pair construction validates domains and records tail deviation") {
  auto good = materialize(PotentialSpec::constant(0.0), 0.0, 1.0, 101);
  auto off = materialize(PotentialSpec::constant(0.0), 0.0, 0.9, 101);
  CHECK_THROWS_AS((void)make_pair(off, 0.0, good, 0.0, 0.0, 0.5), ConfigError);
  CHECK_THROWS_AS((void)make_pair(good, 0.0, good, 0.0, 0.0, 0.7), ConfigError);
  CHECK_THROWS_AS((void)make_pair(good, 0.0, good, 0.0, 0.0, 0.0), ConfigError);

  auto q2 = good;
  for (int i = 0; i < q2.grid_n(); ++i) {
    if (q2.node(i) > 0.8) q2.samples[static_cast<size_t>(i)] = 0.2;
  }
  auto pp = make_pair(good, 0.1, q2, 0.2, 0.3, 0.5);
  CHECK_FALSE(pp.agree_on_tail);  // deviation measured, not silently dropped
  CHECK(pp.tail_dev == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("kappa from boundary constants and the potential difference") {
  // 0.9 sin^2(2 pi x) on [0, 1/2) integrates to 0.225; kappa = 1 - 0.225
  auto pp = generic_pair();
  CHECK(pair_kappa(pp) == doctest::Approx(0.775).epsilon(1e-9));

  // piecewise-constant difference: the materialized one-cell ramp at x = a
  // makes the exact trapezoid value 2 h1 - c (a - delta/2)
  auto cd = const_diff_pair(1.0);
  const double delta = cd.q1.step();
  const double exact = 2.0 - (cd.a - 0.5 * delta);
  CHECK(pair_kappa(cd) == doctest::Approx(exact).epsilon(1e-12));
}

namespace {
// Closed-form psi1 for q1 = 1 on [0,a), h1 = 1: frequency sqrt(z^2 - 1),
// degenerating to 1 - x at z = 1.
double cd_psi1(double x, double z) {
  if (z == 1.0) return 1.0 - x;
  const double w = std::sqrt(z * z - 1.0);
  return std::cos(w * x) - std::sin(w * x) / w;
}

// int_0^a psi1 psi2 dx with psi2 = cos(zx), by product-to-sum antiderivatives.
double cd_product_integral(double a, double z) {
  if (z == 1.0) return (1.0 - a) * std::sin(a) - std::cos(a) + 1.0;
  const double w = std::sqrt(z * z - 1.0);
  const double sp = w + z, sm = z - w;
  const double i1 =
      std::sin(sp * a) / (2.0 * sp) + std::sin(sm * a) / (2.0 * sm);
  const double i2 = 0.5 * ((1.0 - std::cos(sp * a)) / sp +
                           (std::cos(sm * a) - 1.0) / sm);
  return i1 - i2 / w;
}
}  // namespace

TEST_CASE("f against the piecewise-constant closed form") {
  // q1 = 1 on [0,a), q2 = 0, h1 = 1, h2 = 0: both solutions are explicit, so
  //   f(z) = -4a + 8 int_0^a psi1 psi2 dx
  // minus the one-cell ramp correction 2 delta (-1 + 2 psi1(a) psi2(a)) from
  // the materialized jump at x = a. z = 1 hits the degenerate zero-frequency
  // branch of psi1.
  auto cd = const_diff_pair(1.0);
  const double a = cd.a, delta = cd.q1.step();
  for (double z : {1.0, 3.7, 12.0}) {
    const double f_at_a = -1.0 + 2.0 * cd_psi1(a, z) * std::cos(z * a);
    const double expected =
        -4.0 * a + 8.0 * cd_product_integral(a, z) - 2.0 * delta * f_at_a;
    CHECK(f_eval(cd, z) == doctest::Approx(expected).epsilon(2e-5));
  }
}

TEST_CASE("f in the lambda variable handles negative spectral parameters") {
  auto pp = generic_pair();
  const double z = 2.5;
  CHECK(f_eval_lambda(pp, z * z) == doctest::Approx(f_eval(pp, z)).epsilon(1e-12));
  const double below = f_eval_lambda(pp, -5.0);
  CHECK(std::isfinite(below));
  // identical data makes the integrand vanish sample-by-sample
  auto same = identical_pair();
  CHECK(f_eval(same, 4.0) == 0.0);
  CHECK(f_eval_lambda(same, -3.0) == 0.0);
}

TEST_CASE("Lagrange identity holds to quadrature accuracy") {
  auto pp = generic_pair();
  std::mt19937_64 rng(42);
  for (int k = 0; k < 10; ++k) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double z = 0.1 + 59.9 * u;
    auto e = lagrange_check(pp, z);
    const double scale =
        std::max({1.0, std::abs(e.lagrange_lhs), std::abs(e.lagrange_rhs)});
    CHECK(e.lagrange_dev <= 1e-7 * scale);
  }

  // identical data: both sides are exactly zero in floating point
  auto same = identical_pair();
  for (double z : {1.5, 7.3}) {
    auto e = lagrange_check(same, z);
    CHECK(e.lagrange_lhs == 0.0);
    CHECK(e.lagrange_dev == 0.0);
  }
}

TEST_CASE("Lagrange deviation shrinks at second order under grid doubling") {
  // needs dq(0) != 0 so the h^2 Euler-Maclaurin boundary term stays alive
  auto pp = smooth_diff_pair();
  const double z = 4.0;
  std::vector<double> devs;
  for (int n : {400, 800, 1600, 3200}) {
    devs.push_back(lagrange_check(pp, z, n).lagrange_dev);
  }
  for (size_t i = 0; i + 1 < devs.size(); ++i) {
    const double ratio = devs[i] / devs[i + 1];
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
  }
}

TEST_CASE("f sits at 4 kappa on shared eigenvalues") {
  auto same = identical_pair();
  OperatorSpec op{same.q1, {same.h1, same.H}};
  auto sp = compute_spectrum(op, 8);
  auto S = make_subspectrum(sp, scenario_indices(ScenarioKind::even, 9));
  auto rep = vanish_on_common(same, S);
  CHECK(rep.kappa == 0.0);
  CHECK(rep.f_offset == 4.0 * rep.kappa);
  CHECK(rep.entries.size() == 5);
  CHECK(rep.max_f_dev <= 1e-15);
  CHECK(rep.max_lagrange_dev <= 1e-15);
  for (const auto& e : rep.entries) CHECK(e.matched_gap <= 1e-15);

  std::ostringstream csv;
  rep.write_csv(csv);
  CHECK(csv.str().find("z,") != std::string::npos);
  CHECK(rep.to_json().find("max_f_dev") != std::string::npos);
}

TEST_CASE("operators with different spectra are rejected as a shared list") {
  auto pp = generic_pair();
  OperatorSpec op{pp.q1, {pp.h1, pp.H}};
  auto sp = compute_spectrum(op, 5);
  auto S = make_subspectrum(sp, {0, 1, 2});
  CHECK_THROWS_AS((void)vanish_on_common(pp, S), NumericError);
  SubSpectrum empty;
  CHECK_THROWS_AS((void)vanish_on_common(pp, empty), ConfigError);
}
