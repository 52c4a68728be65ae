// SPDX-License-Identifier: Apache-2.0
#include "hgw/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace hgw {

int SpectralDecomposition::positive_start() const {
  int k = 0;
  while (k < size() && eigenvalues(k) <= spectral_gap_tol) ++k;
  return k;
}

double SpectralDecomposition::lambda_1() const {
  if (!connected)
    throw Error(errc::disconnected_graph,
                "no spectral gap: graph is disconnected");
  return eigenvalues(1);
}

double SpectralDecomposition::lambda_max() const {
  return size() > 0 ? eigenvalues(size() - 1) : 0.0;
}

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols())
    throw Error(errc::dimension_mismatch, "matrix is not square");
  if (!L.allFinite())
    throw Error(errc::non_finite, "matrix has non-finite entries");
  const int n = static_cast<int>(L.rows());
  double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
  if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(errc::not_symmetric, "matrix is not symmetric within 1e-12");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      (L + L.transpose()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw Error(errc::convergence_failure, "eigensolver did not converge");

  SpectralDecomposition d;
  d.eigenvalues = solver.eigenvalues();   // ascending by construction
  d.eigenvectors = solver.eigenvectors();

  // Deterministic signs: largest-magnitude entry of each eigenvector
  // (ties -> lowest index) made positive.  Magnitudes within a relative
  // 1e-12 count as tied so the pivot cannot dance on last-ulp noise when
  // an eigenvector has symmetric entries.
  for (int k = 0; k < n; ++k) {
    const double top = d.eigenvectors.col(k).cwiseAbs().maxCoeff();
    int arg = 0;
    while (std::abs(d.eigenvectors(arg, k)) < top * (1.0 - 1e-12)) ++arg;
    if (d.eigenvectors(arg, k) < 0.0) d.eigenvectors.col(k) = -d.eigenvectors.col(k);
  }

  d.spectral_gap_tol = 1e-9 * std::max(1.0, d.lambda_max());
  d.connected = n <= 1 || d.eigenvalues(1) > d.spectral_gap_tol;
  return d;
}

Eigen::MatrixXd heat_kernel(const SpectralDecomposition& d, double t) {
  if (t < 0.0)
    throw Error(errc::negative_time, "heat kernel needs t >= 0");
  if (t == 0.0) return Eigen::MatrixXd::Identity(d.size(), d.size());
  Eigen::VectorXd decay = (-t * d.eigenvalues.array()).exp();
  Eigen::MatrixXd H =
      d.eigenvectors * decay.asDiagonal() * d.eigenvectors.transpose();
  return ((H + H.transpose()) / 2.0).eval();
}

}  // namespace hgw
