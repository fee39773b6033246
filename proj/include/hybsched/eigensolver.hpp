#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "hybsched/error.hpp"

namespace hybsched {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations with threshold
/// sweeps. Iterates until the off-diagonal Frobenius norm falls below 1e-10 of
/// the input's Frobenius norm (at most 100 sweeps). Returns all eigenvalues in
/// ascending order. Rejects matrices that are not symmetric to 1e-9.
template <typename Derived>
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixBase<Derived>& input) {
  Eigen::MatrixXd a = input.template cast<double>();
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw Error(Errc::asymmetry, "matrix is not square");
  if (n == 0) return {};

  double max_abs = a.cwiseAbs().maxCoeff();
  double sym_tol = 1e-9 * std::max(1.0, max_abs);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > sym_tol) {
        throw Error(Errc::asymmetry, "matrix is not symmetric within tolerance");
      }
      double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = a(j, i) = m;
    }
  }

  auto off_norm = [&]() {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(s);
  };

  const double target = 1e-10 * a.norm();
  const double skip = target / std::max<double>(1.0, static_cast<double>(n));
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm() <= target) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= skip) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        double h = t * apq;
        a(p, p) -= h;
        a(q, q) += h;
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          double aip = a(i, p);
          double aiq = a(i, q);
          a(i, p) = a(p, i) = aip - s * (aiq + tau * aip);
          a(i, q) = a(q, i) = aiq + s * (aip - tau * aiq);
        }
      }
    }
  }

  std::vector<double> eig(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace hybsched
