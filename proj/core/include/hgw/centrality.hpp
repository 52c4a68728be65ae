// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_CENTRALITY_HPP
#define HGW_CENTRALITY_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hgw/graph.hpp"
#include "hgw/spectral.hpp"

namespace hgw {

/// Squared norm of the wavelet atom at scale t centered at x:
///   ||psi_{t,x}||² = sum_{k>=1} t² lambda_k² e^{-2 t lambda_k} phi_k(x)².
double wavelet_energy(const SpectralDecomposition& d, double t, int x);

/// Mean diffusion time, the total wavelet energy over all scales:
///   MDT(x) = ∫_0^∞ ||psi_{t,x}||² dt = (1/4) sum_{k>=1} phi_k(x)²/lambda_k
/// (each mode contributes ∫ t²λ²e^{-2tλ} dt = 1/(4λ)). Requires a
/// connected graph; small values mark vertices diffusion leaves fastest.
Eigen::VectorXd mdt_closed_form(const SpectralDecomposition& d);

/// The same integral by composite Simpson quadrature on [0, 30/lambda_1],
/// panels doubled until successive estimates agree to 1e-9 relative
/// (the analytic tail beyond the cutoff is folded into the error
/// budget). Deliberately shares no algebra with mdt_closed_form.
double mdt_numeric(const SpectralDecomposition& d, int x);

/// All vertices in one quadrature sweep (same nodes, shared evaluation).
Eigen::VectorXd mdt_numeric_all(const SpectralDecomposition& d);

/// Information centrality from the spectrum:
///   IC(x) = (p(x) + mean_z p(z))^{-1},  p(x) = sum_{k>=1} phi_k(x)²/lambda_k.
Eigen::VectorXd information_centrality(const SpectralDecomposition& d);

/// Information centrality with no spectral data: p(x) is the diagonal
/// of the Laplacian pseudoinverse, obtained from linear solves with
/// L + J/N (J all-ones). An independent check of information_centrality.
Eigen::VectorXd ic_oracle(const Graph& g);

/// Leader = argmin MDT; ties within a relative window are all reported.
struct CentralityReport {
  std::vector<std::string> labels;
  Eigen::VectorXd mdt;
  Eigen::VectorXd ic;
  /// Vertex indices sorted by ascending MDT (ties by label).
  std::vector<int> ranking;
  /// Labels within relative_tolerance of the minimum MDT, sorted.
  std::vector<std::string> tie_set;
  /// Labels within relative_tolerance of the maximum IC, sorted.
  std::vector<std::string> ic_max_set;
  std::string leader;
  double relative_tolerance = 0.0;
  /// Whether tie_set == ic_max_set, i.e. the two centralities agree on
  /// the extremal vertices. Expected true for every connected graph.
  bool mdt_ic_consistent = false;
};

CentralityReport select_leader(const Graph& g, const SpectralDecomposition& d,
                               double relative_tolerance = 1e-9);
CentralityReport select_leader(const Graph& g,
                               double relative_tolerance = 1e-9);

}  // namespace hgw

#endif  // HGW_CENTRALITY_HPP
