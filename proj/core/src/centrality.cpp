// SPDX-License-Identifier: Apache-2.0
#include "hgw/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hgw/wavelet.hpp"

namespace hgw {
namespace {

void require_connected(const SpectralDecomposition& d) {
  if (!d.connected)
    throw Error(errc::disconnected_graph,
                "diffusion-time centrality needs a connected graph");
}

// Rows of S are per-vertex squared eigenvector entries over the
// positive spectrum; lam holds the matching eigenvalues.
struct PositiveModes {
  Eigen::MatrixXd S;
  Eigen::VectorXd lam;
};

PositiveModes positive_modes(const SpectralDecomposition& d) {
  const int k0 = d.positive_start();
  const int m = d.size() - k0;
  PositiveModes pm;
  pm.S = d.eigenvectors.middleCols(k0, m).array().square().matrix();
  pm.lam = d.eigenvalues.segment(k0, m);
  return pm;
}

// ||psi_{t,.}||² for all rows of S at once: S * (g(t*lam)²).
Eigen::VectorXd energy_all(const PositiveModes& pm, double t) {
  Eigen::ArrayXd g = t * pm.lam.array() * (-t * pm.lam.array()).exp();
  return pm.S * (g * g).matrix();
}

// Composite Simpson of energy_all over [0, 30/lambda_1] with the panel
// count doubled (trapezoid refinement + Richardson, so no node is
// evaluated twice) until every component settles to 1e-9 relative.
// The analytic tail of each mode beyond the cutoff joins the error
// term rather than the estimate; at 30/lambda_1 it is ~e^{-60}.
Eigen::VectorXd simpson_mdt(const PositiveModes& pm, double lambda_1) {
  const double T = 30.0 / lambda_1;
  const int rows = static_cast<int>(pm.S.rows());

  Eigen::VectorXd tail = Eigen::VectorXd::Zero(rows);
  for (int k = 0; k < pm.lam.size(); ++k) {
    const double lam = pm.lam(k);
    // ∫_T^∞ t²λ²e^{-2λt} dt = e^{-2λT}(T²λ/2 + T/2 + 1/(4λ))
    const double mode_tail =
        std::exp(-2.0 * lam * T) * (T * T * lam / 2.0 + T / 2.0 + 0.25 / lam);
    tail += mode_tail * pm.S.col(k);
  }

  const long start_panels = 16;
  const long max_panels = 1L << 22;
  // Trapezoid rule at the starting resolution; f(0) = 0 identically.
  long panels = start_panels;
  double h = T / double(panels);
  Eigen::VectorXd trap = 0.5 * h * energy_all(pm, T);
  for (long i = 1; i < panels; ++i) trap += h * energy_all(pm, h * double(i));

  Eigen::VectorXd simpson_prev;
  Eigen::VectorXd trap_prev = trap;
  bool have_prev = false;
  while (panels < max_panels) {
    panels *= 2;
    h = T / double(panels);
    Eigen::VectorXd mid = Eigen::VectorXd::Zero(rows);
    for (long i = 1; i < panels; i += 2) mid += energy_all(pm, h * double(i));
    trap = 0.5 * trap_prev + h * mid;
    Eigen::VectorXd simpson = (4.0 * trap - trap_prev) / 3.0;
    if (have_prev) {
      bool converged = true;
      for (int i = 0; i < rows; ++i) {
        const double err = std::abs(simpson(i) - simpson_prev(i)) + tail(i);
        if (err > 1e-9 * std::abs(simpson(i))) {
          converged = false;
          break;
        }
      }
      if (converged) return simpson;
    }
    simpson_prev = simpson;
    trap_prev = trap;
    have_prev = true;
  }
  throw Error(errc::quadrature_nonconvergence,
              "diffusion-time quadrature did not converge");
}

std::vector<std::string> sorted_labels(const std::vector<int>& idx,
                                       const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(labels[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double wavelet_energy(const SpectralDecomposition& d, double t, int x) {
  require_connected(d);
  if (t < 0.0) throw Error(errc::negative_time, "energy needs t >= 0");
  if (x < 0 || x >= d.size())
    throw Error(errc::invalid_vertex, "vertex index out of range");
  double e = 0.0;
  for (int k = d.positive_start(); k < d.size(); ++k) {
    const double g = kernel_g(t * d.eigenvalues(k));
    e += g * g * d.eigenvectors(x, k) * d.eigenvectors(x, k);
  }
  return e;
}

Eigen::VectorXd mdt_closed_form(const SpectralDecomposition& d) {
  require_connected(d);
  PositiveModes pm = positive_modes(d);
  return 0.25 * (pm.S * pm.lam.cwiseInverse());
}

double mdt_numeric(const SpectralDecomposition& d, int x) {
  require_connected(d);
  if (x < 0 || x >= d.size())
    throw Error(errc::invalid_vertex, "vertex index out of range");
  PositiveModes pm = positive_modes(d);
  pm.S = pm.S.row(x).eval();
  return simpson_mdt(pm, d.lambda_1())(0);
}

Eigen::VectorXd mdt_numeric_all(const SpectralDecomposition& d) {
  require_connected(d);
  return simpson_mdt(positive_modes(d), d.lambda_1());
}

Eigen::VectorXd information_centrality(const SpectralDecomposition& d) {
  require_connected(d);
  PositiveModes pm = positive_modes(d);
  Eigen::VectorXd p = pm.S * pm.lam.cwiseInverse();
  return (p.array() + p.mean()).inverse();
}

Eigen::VectorXd ic_oracle(const Graph& g) {
  const int n = g.size();
  if (n == 0) throw Error(errc::malformed_input, "empty graph");
  const Eigen::MatrixXd J = Eigen::MatrixXd::Constant(n, n, 1.0 / double(n));
  const Eigen::MatrixXd M = laplacian(g) + J;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  Eigen::MatrixXd X = lu.solve(I);
  const double residual = (M * X - I).cwiseAbs().maxCoeff();
  const double scale =
      std::max(1.0, M.cwiseAbs().maxCoeff() * X.cwiseAbs().maxCoeff());
  if (!X.allFinite() || residual > 1e-8 * scale)
    throw Error(errc::singular_system,
                "rank-completed Laplacian solve failed (disconnected graph?)");
  // Pseudoinverse diagonal: P = (L + J/n)^{-1} - J/n.
  Eigen::VectorXd p = X.diagonal().array() - 1.0 / double(n);
  const double mean = p.mean();
  if (((p.array() + mean) <= 0.0).any())
    throw Error(errc::singular_system,
                "pseudoinverse diagonal is not positive");
  return (p.array() + mean).inverse();
}

CentralityReport select_leader(const Graph& g, const SpectralDecomposition& d,
                               double relative_tolerance) {
  if (d.size() != g.size())
    throw Error(errc::dimension_mismatch,
                "decomposition does not match graph");
  CentralityReport report;
  report.labels = g.labels;
  report.relative_tolerance = relative_tolerance;
  report.mdt = mdt_closed_form(d);
  report.ic = information_centrality(d);

  const int n = g.size();
  report.ranking.resize(n);
  std::iota(report.ranking.begin(), report.ranking.end(), 0);
  std::sort(report.ranking.begin(), report.ranking.end(), [&](int a, int b) {
    if (report.mdt(a) != report.mdt(b)) return report.mdt(a) < report.mdt(b);
    return g.labels[a] < g.labels[b];
  });

  const double mdt_min = report.mdt.minCoeff();
  const double ic_max = report.ic.maxCoeff();
  std::vector<int> tie_idx, ic_idx;
  for (int i = 0; i < n; ++i) {
    if (report.mdt(i) <= mdt_min * (1.0 + relative_tolerance))
      tie_idx.push_back(i);
    if (report.ic(i) >= ic_max * (1.0 - relative_tolerance))
      ic_idx.push_back(i);
  }
  report.tie_set = sorted_labels(tie_idx, g.labels);
  report.ic_max_set = sorted_labels(ic_idx, g.labels);
  report.leader = report.tie_set.front();
  report.mdt_ic_consistent = report.tie_set == report.ic_max_set;
  return report;
}

CentralityReport select_leader(const Graph& g, double relative_tolerance) {
  return select_leader(g, eigendecompose(laplacian(g)), relative_tolerance);
}

}  // namespace hgw
