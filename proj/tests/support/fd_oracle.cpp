// SPDX-License-Identifier: Apache-2.0
#include "fd_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace slgate::testing {

std::vector<double> fd_eigenvalues(const std::function<double(double)>& q,
                                   double h, double H, int n_intervals,
                                   int count) {
  if (n_intervals < 8) throw std::invalid_argument("fd_eigenvalues: grid too small");
  const int n = n_intervals + 1;
  const double dx = 1.0 / static_cast<double>(n_intervals);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = dx * static_cast<double>(i);
    diag(i) = 2.0 / (dx * dx) + q(x);
  }
  diag(0) -= 2.0 * h / dx;
  diag(n - 1) += 2.0 * H / dx;
  for (int i = 0; i + 1 < n; ++i) sub(i) = -1.0 / (dx * dx);
  // Half-mass end rows: symmetrization scales the end couplings by sqrt(2).
  sub(0) = -std::sqrt(2.0) / (dx * dx);
  sub(n - 2) = -std::sqrt(2.0) / (dx * dx);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count && i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

std::vector<double> fd_eigenvalues_richardson(
    const std::function<double(double)>& q, double h, double H,
    int n_intervals, int count) {
  const auto coarse = fd_eigenvalues(q, h, H, n_intervals, count);
  const auto fine = fd_eigenvalues(q, h, H, 2 * n_intervals, count);
  std::vector<double> out(coarse.size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  }
  return out;
}

}  // namespace slgate::testing
