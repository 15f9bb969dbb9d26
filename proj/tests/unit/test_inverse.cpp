// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "slgate/errors.hpp"
#include "slgate/inverse.hpp"

using namespace slgate;
using namespace slgate::testing;

namespace {

ReconstructionProblem base_problem() {
  ReconstructionProblem prob;
  prob.known_part = materialize(PotentialSpec::linear(1.0, -0.5), 0.5, 1.0, 501);
  prob.a = 0.5;
  prob.H = 0.4;
  prob.basis_dim = 3;
  prob.grid_n = 1501;
  return prob;
}

const std::vector<double> kTruth = {0.5, -0.3, 0.2};
constexpr double kTruthH = 0.6;

}  // namespace

TEST_CASE("potential assembly splices basis and known part") {
  auto prob = base_problem();
  auto q = assemble_potential(kTruth, prob, 401);
  // left of a: cosine expansion c0 + c1 cos(pi x / a) + c2 cos(2 pi x / a)
  for (double x : {0.0, 0.1, 0.25, 0.4}) {
    const double expected = 0.5 - 0.3 * std::cos(kPi * x / 0.5) +
                            0.2 * std::cos(2.0 * kPi * x / 0.5);
    CHECK(q.eval(x) == doctest::Approx(expected).epsilon(1e-6));
  }
  // from a on: the known tail
  for (double x : {0.5, 0.75, 1.0}) {
    CHECK(q.eval(x) == doctest::Approx(x - 0.5).epsilon(1e-9));
  }
  CHECK_THROWS_AS((void)assemble_potential(kTruth, prob, 1), ConfigError);
}

TEST_CASE("forward map equals the direct solver at the target indices") {
  auto prob = base_problem();
  prob.target_indices = {0, 2, 5};
  prob.target_values = {0.0, 0.0, 0.0};  // unused by the forward map
  auto q = assemble_potential(kTruth, prob, prob.grid_n);
  OperatorSpec op{q, {kTruthH, prob.H}};
  auto sp = compute_spectrum(op, 5);

  auto lam = forward_map(kTruth, kTruthH, prob, prob.grid_n);
  REQUIRE(lam.size() == 3);
  CHECK(lam[0] == doctest::Approx(sp.eigenvalues[0]).epsilon(1e-12));
  CHECK(lam[1] == doctest::Approx(sp.eigenvalues[2]).epsilon(1e-12));
  CHECK(lam[2] == doctest::Approx(sp.eigenvalues[5]).epsilon(1e-12));

  // freezing the integration grid moves eigenvalues only at solver accuracy
  auto frozen = forward_map(kTruth, kTruthH, prob, prob.grid_n, 4000);
  for (size_t i = 0; i < lam.size(); ++i) {
    CHECK(std::abs(frozen[i] - lam[i]) <=
          1e-6 * std::max(1.0, std::abs(lam[i])));
  }
}

TEST_CASE("eight eigenvalues pin down three coefficients and h") {
  auto prob = base_problem();
  // data generated on a deliberately finer grid than the inversion uses
  auto q_true = assemble_potential(kTruth, prob, 3001);
  OperatorSpec op{q_true, {kTruthH, prob.H}};
  auto sp = compute_spectrum(op, 7);
  for (int j = 0; j <= 7; ++j) {
    prob.target_indices.push_back(j);
    prob.target_values.push_back(sp.eigenvalues[static_cast<size_t>(j)]);
  }

  auto res = reconstruct(prob);
  CHECK(res.converged);
  CHECK(std::abs(res.h - kTruthH) <= 1e-3);

  auto q_rec = assemble_potential(res.coefficients, prob, 3001);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < q_true.grid_n(); ++i) {
    if (q_true.node(i) >= prob.a) break;
    const double d = q_rec.samples[static_cast<size_t>(i)] -
                     q_true.samples[static_cast<size_t>(i)];
    num += d * d;
    den += q_true.samples[static_cast<size_t>(i)] *
           q_true.samples[static_cast<size_t>(i)];
  }
  CHECK(std::sqrt(num / den) <= 2e-3);

  REQUIRE(res.misfit_history.size() >= 2);
  for (size_t i = 0; i + 1 < res.misfit_history.size(); ++i) {
    CHECK(res.misfit_history[i + 1] <=
          res.misfit_history[i] * (1.0 + 1e-12));
  }
  CHECK(res.misfit_history.front() > res.misfit_history.back());

  REQUIRE(res.gn_hessian_eigenvalues.size() == 4);
  for (size_t i = 0; i + 1 < res.gn_hessian_eigenvalues.size(); ++i) {
    CHECK(res.gn_hessian_eigenvalues[i] <= res.gn_hessian_eigenvalues[i + 1]);
  }
  CHECK(res.gn_hessian_eigenvalues.front() > 0.0);  // full column rank
  CHECK(res.to_json().find("gn_hessian") != std::string::npos);
}

TEST_CASE("three targets leave four parameters rank-deficient") {
  auto prob = base_problem();
  auto q_true = assemble_potential(kTruth, prob, 3001);
  OperatorSpec op{q_true, {kTruthH, prob.H}};
  auto sp = compute_spectrum(op, 2);
  prob.target_indices = {0, 1, 2};
  prob.target_values = sp.eigenvalues;
  prob.max_iterations = 15;

  auto res = reconstruct(prob);
  REQUIRE(res.gn_hessian_eigenvalues.size() == 4);
  const double top = std::abs(res.gn_hessian_eigenvalues.back());
  const double bottom = std::abs(res.gn_hessian_eigenvalues.front());
  CHECK(top > 0.0);
  CHECK(bottom <= 1e-3 * top);  // the null direction shows up numerically
}

TEST_CASE("reconstruction problem validation") {
  auto make = [] {
    auto prob = base_problem();
    prob.target_indices = {0, 1};
    prob.target_values = {1.0, 2.0};
    return prob;
  };
  {
    auto p = make();
    p.a = 0.7;
    CHECK_THROWS_AS((void)reconstruct(p), ConfigError);
  }
  {
    auto p = make();
    p.basis_dim = 0;
    CHECK_THROWS_AS((void)reconstruct(p), ConfigError);
  }
  {
    auto p = make();
    p.target_values.pop_back();
    CHECK_THROWS_AS((void)reconstruct(p), ConfigError);
  }
  {
    auto p = make();
    p.target_indices = {};
    p.target_values = {};
    CHECK_THROWS_AS((void)reconstruct(p), ConfigError);
  }
  {
    auto p = make();
    p.target_indices = {0, -3};
    CHECK_THROWS_AS((void)reconstruct(p), ConfigError);
  }
  {
    auto p = make();
    p.known_part = materialize(PotentialSpec::constant(0.0), 0.3, 1.0, 101);
    CHECK_THROWS_AS((void)reconstruct(p), ConfigError);
  }
  {
    auto p = make();
    p.mu = -1.0;
    CHECK_THROWS_AS((void)reconstruct(p), ConfigError);
  }
}
