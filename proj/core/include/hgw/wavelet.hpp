// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_WAVELET_HPP
#define HGW_WAVELET_HPP

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "hgw/spectral.hpp"

namespace hgw {

/// Band-pass kernel g(x) = x * e^{-x}: the time derivative of the heat
/// semigroup evaluated at unit time. g(0) = 0, peak at x = 1.
double kernel_g(double x);

/// The admissibility integral of g, ∫_0^∞ g(x)²/x dx = ∫ x e^{-2x} dx.
/// Analytic value 1/4.
double admissibility_constant();

/// Scale set placing the kernel peak s*lambda = 1 geometrically across
/// [lambda_1, lambda_max]: s_n = lambda_max^{-1} (lambda_max/lambda_1)^{n/(J-1)},
/// ascending. J = 1 collapses to the geometric midpoint 1/sqrt(lambda_1*lambda_max).
std::vector<double> default_scales(double lambda_1, double lambda_max, int J);

/// Wavelet atom centered at vertex x: psi_{s,x}(y) = sum over the
/// positive spectrum of g(s*lambda_k) phi_k(x) phi_k(y). Zero mean.
Eigen::VectorXd wavelet_atom(const SpectralDecomposition& d, double s, int x);

/// All atoms at one scale as the columns of the symmetric matrix
/// g(s*Laplacian) = s*Laplacian*e^{-s*Laplacian}.
Eigen::MatrixXd wavelet_operator(const SpectralDecomposition& d, double s);

/// Forward transform: row n, column x holds W(s_n, x) = <psi_{s_n,x}, f>.
Eigen::MatrixXd transform(const SpectralDecomposition& d,
                          const std::vector<double>& scales,
                          const Eigen::VectorXd& f);

/// Extrema of G(lambda) = sum_n g(s_n*lambda)² over the positive
/// spectrum; A > 0 iff some scale responds to every positive eigenvalue.
struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
};

FrameBounds frame_bounds(const SpectralDecomposition& d,
                         const std::vector<double>& scales);

/// A fixed scale set bundled with its decomposition and frame bounds.
/// Scales are stored ascending (descending frequency) with exact
/// duplicates merged, so a degenerate spectrum yields a single scale.
struct WaveletFrame {
  std::shared_ptr<const SpectralDecomposition> decomposition;
  std::vector<double> scales;
  double frame_A = 0.0;
  double frame_B = 0.0;
};

WaveletFrame make_frame(std::shared_ptr<const SpectralDecomposition> d,
                        std::vector<double> scales);

/// Least-squares inverse of transform() on the zero-mean subspace (the
/// constant component is not representable and comes back as zero).
/// Provided as a convenience; the analysis side is the point here.
Eigen::VectorXd reconstruct(const WaveletFrame& frame,
                            const Eigen::MatrixXd& coefficients);

}  // namespace hgw

#endif  // HGW_WAVELET_HPP
