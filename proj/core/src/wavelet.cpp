// SPDX-License-Identifier: Apache-2.0
#include "hgw/wavelet.hpp"

#include <algorithm>
#include <cmath>

namespace hgw {
namespace {

void require_positive_scale(double s) {
  if (!(s > 0.0))
    throw Error(errc::nonpositive_scale, "scale must be positive");
}

// Filter response sum_{k in positive spectrum} applied as a diagonal.
Eigen::VectorXd kernel_diagonal(const SpectralDecomposition& d, double s) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d.size());
  for (int k = d.positive_start(); k < d.size(); ++k)
    w(k) = kernel_g(s * d.eigenvalues(k));
  return w;
}

}  // namespace

double kernel_g(double x) { return x * std::exp(-x); }

double admissibility_constant() {
  // ∫_0^∞ (x e^{-x})²/x dx = ∫_0^∞ x e^{-2x} dx = 1/4 by parts.
  return 0.25;
}

std::vector<double> default_scales(double lambda_1, double lambda_max, int J) {
  if (!(lambda_1 > 0.0) || !(lambda_max >= lambda_1))
    throw Error(errc::invalid_spectrum_range,
                "need 0 < lambda_1 <= lambda_max");
  if (J < 1)
    throw Error(errc::invalid_spectrum_range, "need at least one scale");
  std::vector<double> scales;
  scales.reserve(J);
  if (J == 1) {
    scales.push_back(1.0 / std::sqrt(lambda_1 * lambda_max));
    return scales;
  }
  const double ratio = lambda_max / lambda_1;
  for (int n = 0; n < J; ++n)
    scales.push_back(std::pow(ratio, double(n) / double(J - 1)) / lambda_max);
  return scales;
}

Eigen::VectorXd wavelet_atom(const SpectralDecomposition& d, double s, int x) {
  require_positive_scale(s);
  if (x < 0 || x >= d.size())
    throw Error(errc::invalid_vertex, "vertex index out of range");
  Eigen::VectorXd w = kernel_diagonal(d, s);
  // sum_k g(s lambda_k) phi_k(x) phi_k(y)
  return d.eigenvectors *
         (w.array() * d.eigenvectors.row(x).transpose().array()).matrix();
}

Eigen::MatrixXd wavelet_operator(const SpectralDecomposition& d, double s) {
  require_positive_scale(s);
  Eigen::VectorXd w = kernel_diagonal(d, s);
  Eigen::MatrixXd T =
      d.eigenvectors * w.asDiagonal() * d.eigenvectors.transpose();
  return ((T + T.transpose()) / 2.0).eval();
}

Eigen::MatrixXd transform(const SpectralDecomposition& d,
                          const std::vector<double>& scales,
                          const Eigen::VectorXd& f) {
  if (f.size() != d.size())
    throw Error(errc::dimension_mismatch,
                "signal length does not match vertex count");
  Eigen::MatrixXd coeffs(scales.size(), d.size());
  Eigen::VectorXd fhat = d.eigenvectors.transpose() * f;
  for (std::size_t n = 0; n < scales.size(); ++n) {
    Eigen::VectorXd w = kernel_diagonal(d, scales[n]);
    coeffs.row(n) = (d.eigenvectors * (w.array() * fhat.array()).matrix())
                        .transpose();
  }
  return coeffs;
}

FrameBounds frame_bounds(const SpectralDecomposition& d,
                         const std::vector<double>& scales) {
  if (scales.empty())
    throw Error(errc::empty_scale_set, "frame needs at least one scale");
  for (double s : scales) require_positive_scale(s);
  FrameBounds b;
  bool first = true;
  for (int k = d.positive_start(); k < d.size(); ++k) {
    double G = 0.0;
    for (double s : scales) {
      double g = kernel_g(s * d.eigenvalues(k));
      G += g * g;
    }
    if (first) {
      b.A = b.B = G;
      first = false;
    } else {
      b.A = std::min(b.A, G);
      b.B = std::max(b.B, G);
    }
  }
  return b;
}

WaveletFrame make_frame(std::shared_ptr<const SpectralDecomposition> d,
                        std::vector<double> scales) {
  if (!d) throw Error(errc::malformed_input, "frame needs a decomposition");
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  WaveletFrame frame;
  FrameBounds b = frame_bounds(*d, scales);
  frame.decomposition = std::move(d);
  frame.scales = std::move(scales);
  frame.frame_A = b.A;
  frame.frame_B = b.B;
  return frame;
}

Eigen::VectorXd reconstruct(const WaveletFrame& frame,
                            const Eigen::MatrixXd& coefficients) {
  const SpectralDecomposition& d = *frame.decomposition;
  if (coefficients.rows() != static_cast<Eigen::Index>(frame.scales.size()) ||
      coefficients.cols() != d.size())
    throw Error(errc::dimension_mismatch,
                "coefficient matrix does not match frame");
  // Normal equations in the spectral domain: for each positive mode,
  // f_hat(k) = sum_n g(s_n lambda_k) c_hat(n,k) / G(lambda_k).
  Eigen::MatrixXd chat = coefficients * d.eigenvectors;  // (scale, mode)
  Eigen::VectorXd fhat = Eigen::VectorXd::Zero(d.size());
  for (int k = d.positive_start(); k < d.size(); ++k) {
    double G = 0.0, num = 0.0;
    for (std::size_t n = 0; n < frame.scales.size(); ++n) {
      double g = kernel_g(frame.scales[n] * d.eigenvalues(k));
      G += g * g;
      num += g * chat(n, k);
    }
    if (G > 0.0) fhat(k) = num / G;
  }
  return d.eigenvectors * fhat;
}

}  // namespace hgw
