// SPDX-License-Identifier: Apache-2.0
#include "slgate/inverse.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <json.hpp>

#include "slgate/errors.hpp"
#include "slgate/parallel.hpp"

namespace slgate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_problem(const ReconstructionProblem& prob) {
  if (!(prob.a > 0.0) || prob.a > 0.5 + 1e-12) {
    throw ConfigError("reconstruction: requires 0 < a <= 1/2");
  }
  if (prob.basis_dim < 1) throw ConfigError("reconstruction: basis_dim >= 1");
  if (prob.target_indices.size() != prob.target_values.size() ||
      prob.target_indices.empty()) {
    throw ConfigError("reconstruction: targets empty or mismatched");
  }
  for (int m : prob.target_indices) {
    if (m < 0) throw ConfigError("reconstruction: negative target index");
  }
  if (std::abs(prob.known_part.x_lo - prob.a) > 1e-9 ||
      std::abs(prob.known_part.x_hi - 1.0) > 1e-9) {
    throw ConfigError("reconstruction: known part must live on [a, 1]");
  }
  if (prob.mu < 0.0) throw ConfigError("reconstruction: mu must be >= 0");
}

int fixed_solver_steps(const ReconstructionProblem& prob) {
  const int j_max =
      *std::max_element(prob.target_indices.begin(), prob.target_indices.end());
  const double z_hat = (static_cast<double>(j_max) + 2.0) * kPi + 10.0;
  return static_cast<int>(std::ceil(80.0 * z_hat));
}

}  // namespace

SampledFunction assemble_potential(std::span<const double> coeffs,
                                   const ReconstructionProblem& prob,
                                   int grid_n) {
  if (grid_n < 2) throw ConfigError("assemble_potential: grid_n >= 2");
  std::vector<double> v(static_cast<size_t>(grid_n));
  const double h = 1.0 / static_cast<double>(grid_n - 1);
  for (int i = 0; i < grid_n; ++i) {
    const double x = (i + 1 == grid_n) ? 1.0 : h * static_cast<double>(i);
    if (x < prob.a) {
      double acc = 0.0;
      for (size_t k = 0; k < coeffs.size(); ++k) {
        acc += coeffs[k] * std::cos(static_cast<double>(k) * kPi * x / prob.a);
      }
      v[static_cast<size_t>(i)] = acc;
    } else {
      v[static_cast<size_t>(i)] = prob.known_part.eval(x);
    }
  }
  return SampledFunction(0.0, 1.0, std::move(v));
}

std::vector<double> forward_map(std::span<const double> coeffs, double h,
                                const ReconstructionProblem& prob, int grid_n,
                                int solver_steps) {
  const int j_max =
      *std::max_element(prob.target_indices.begin(), prob.target_indices.end());
  OperatorSpec op;
  op.q = assemble_potential(coeffs, prob, grid_n);
  op.bc.h = h;
  op.bc.H = prob.H;
  SolverOptions opt;
  if (solver_steps > 0) {
    opt.base_steps = solver_steps;
    opt.steps_per_unit_z = 0.0;
  }
  const Spectrum sp = compute_spectrum(op, j_max, opt);
  std::vector<double> out(prob.target_indices.size());
  for (size_t j = 0; j < out.size(); ++j) {
    out[j] = sp.eigenvalues[static_cast<size_t>(prob.target_indices[j])];
  }
  return out;
}

ReconstructionResult reconstruct(const ReconstructionProblem& prob) {
  validate_problem(prob);
  const int m = static_cast<int>(prob.target_values.size());
  const int nc = prob.basis_dim;
  const int np = nc + 1;  // coefficients plus h
  const int steps = fixed_solver_steps(prob);

  std::vector<double> w(static_cast<size_t>(m));
  double misfit_scale = 1.0;
  for (int j = 0; j < m; ++j) {
    w[static_cast<size_t>(j)] = std::max(1.0, std::abs(prob.target_values[static_cast<size_t>(j)]));
    const double rj = prob.target_values[static_cast<size_t>(j)] / w[static_cast<size_t>(j)];
    misfit_scale += rj * rj;
  }

  auto model_of = [&](const std::vector<double>& theta) {
    return forward_map(std::span<const double>(theta.data(), static_cast<size_t>(nc)),
                       theta[static_cast<size_t>(nc)], prob, prob.grid_n, steps);
  };
  auto misfit_of = [&](const std::vector<double>& theta,
                       const std::vector<double>& model) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double r = (model[static_cast<size_t>(j)] -
                        prob.target_values[static_cast<size_t>(j)]) /
                       w[static_cast<size_t>(j)];
      acc += r * r;
    }
    for (int k = 0; k < nc; ++k) {
      acc += prob.mu * theta[static_cast<size_t>(k)] * theta[static_cast<size_t>(k)];
    }
    return acc;
  };

  std::vector<double> theta(static_cast<size_t>(np), 0.0);
  std::vector<double> model = model_of(theta);
  double misfit = misfit_of(theta, model);

  ReconstructionResult res;
  res.misfit_history.push_back(misfit);

  double damp = 1e-3;
  Eigen::MatrixXd J(m, np);
  bool converged = false;
  int it = 0;
  for (; it < prob.max_iterations && !converged; ++it) {
    // Central-difference Jacobian of the weighted residual.
    parallel_for(np, [&](int i) {
      const double delta = 1e-5 * (1.0 + std::abs(theta[static_cast<size_t>(i)]));
      std::vector<double> tp = theta, tm = theta;
      tp[static_cast<size_t>(i)] += delta;
      tm[static_cast<size_t>(i)] -= delta;
      const auto mp = model_of(tp);
      const auto mm = model_of(tm);
      for (int j = 0; j < m; ++j) {
        J(j, i) = (mp[static_cast<size_t>(j)] - mm[static_cast<size_t>(j)]) /
                  (2.0 * delta * w[static_cast<size_t>(j)]);
      }
    });
    Eigen::VectorXd r(m);
    for (int j = 0; j < m; ++j) {
      r(j) = (model[static_cast<size_t>(j)] - prob.target_values[static_cast<size_t>(j)]) /
             w[static_cast<size_t>(j)];
    }
    Eigen::MatrixXd A = J.transpose() * J;
    Eigen::VectorXd grad = J.transpose() * r;
    for (int k = 0; k < nc; ++k) {
      A(k, k) += prob.mu;
      grad(k) += prob.mu * theta[static_cast<size_t>(k)];
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 24; ++attempt) {
      Eigen::MatrixXd Ad = A;
      for (int k = 0; k < np; ++k) {
        Ad(k, k) += damp * std::max(A(k, k), 1e-12);
      }
      const Eigen::VectorXd delta = Ad.ldlt().solve(-grad);
      if (!delta.allFinite()) {
        damp *= 3.0;
        continue;
      }
      std::vector<double> trial = theta;
      for (int k = 0; k < np; ++k) trial[static_cast<size_t>(k)] += delta(k);
      const auto trial_model = model_of(trial);
      const double trial_misfit = misfit_of(trial, trial_model);
      if (trial_misfit < misfit) {
        theta = trial;
        model = trial_model;
        misfit = trial_misfit;
        res.misfit_history.push_back(misfit);
        damp = std::max(damp / 3.0, 1e-14);
        accepted = true;
        const double step_norm = delta.norm();
        double theta_norm = 0.0;
        for (double t : theta) theta_norm += t * t;
        if (step_norm <= prob.step_tol * (1.0 + std::sqrt(theta_norm)) ||
            misfit <= prob.misfit_tol * misfit_scale) {
          converged = true;
        }
        break;
      }
      damp *= 3.0;
      if (damp > 1e14) {
        throw NumericError("reconstruct: normal equations remain singular");
      }
    }
    if (!accepted) break;  // local minimum at the damping ceiling
  }

  res.coefficients.assign(theta.begin(), theta.begin() + nc);
  res.h = theta[static_cast<size_t>(nc)];
  res.final_misfit = misfit;
  res.iterations = it;
  res.converged = converged;

  // Curvature spectrum at the solution, without regularization.
  parallel_for(np, [&](int i) {
    const double delta = 1e-5 * (1.0 + std::abs(theta[static_cast<size_t>(i)]));
    std::vector<double> tp = theta, tm = theta;
    tp[static_cast<size_t>(i)] += delta;
    tm[static_cast<size_t>(i)] -= delta;
    const auto mp = model_of(tp);
    const auto mm = model_of(tm);
    for (int j = 0; j < m; ++j) {
      J(j, i) = (mp[static_cast<size_t>(j)] - mm[static_cast<size_t>(j)]) /
                (2.0 * delta * w[static_cast<size_t>(j)]);
    }
  });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J.transpose() * J);
  res.gn_hessian_eigenvalues.assign(es.eigenvalues().data(),
                                    es.eigenvalues().data() + np);
  return res;
}

std::string ReconstructionResult::to_json() const {
  nlohmann::json j;
  j["coefficients"] = coefficients;
  j["h"] = h;
  j["final_misfit"] = final_misfit;
  j["iterations"] = iterations;
  j["converged"] = converged;
  j["misfit_history"] = misfit_history;
  j["gn_hessian_eigenvalues"] = gn_hessian_eigenvalues;
  return j.dump(2) + "\n";
}

}  // namespace slgate
