// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_SPECTRAL_HPP
#define HGW_SPECTRAL_HPP

#include <Eigen/Dense>

#include "hgw/errors.hpp"

namespace hgw {

/// Eigenvalues and orthonormal eigenvectors of a graph Laplacian,
/// sorted ascending. Column k of eigenvectors is phi_k; each column is
/// scaled so its largest-magnitude entry (ties broken by lowest index)
/// is positive, which pins the otherwise arbitrary signs.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  /// Threshold below which an eigenvalue counts as zero; eigenvalues
  /// above it are "positive spectrum" for every downstream operation.
  double spectral_gap_tol = 0.0;
  /// True when the zero eigenvalue is simple (lambda_1 > tol).
  bool connected = false;

  int size() const { return static_cast<int>(eigenvalues.size()); }

  /// Index of the first eigenvalue above spectral_gap_tol, or size()
  /// if the spectrum is entirely (numerically) zero.
  int positive_start() const;

  /// Smallest positive eigenvalue; throws for a disconnected graph.
  double lambda_1() const;
  /// Largest eigenvalue (0 for an edgeless graph).
  double lambda_max() const;
};

/// Dense symmetric eigendecomposition with the sign convention above.
/// The input must be symmetric within 1e-12 relative and finite.
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& L);

/// Heat kernel H_t = sum_k e^{-t*lambda_k} phi_k phi_k^T, symmetrized
/// against round-off. t = 0 gives the identity; t < 0 throws.
Eigen::MatrixXd heat_kernel(const SpectralDecomposition& d, double t);

}  // namespace hgw

#endif  // HGW_SPECTRAL_HPP
