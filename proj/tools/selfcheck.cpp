// SPDX-License-Identifier: Apache-2.0
#include "selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hgw/hgw.hpp"

namespace hgw::selfcheck {
namespace {

std::string describe(double got, double limit) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.3g exceeds %.3g", got, limit);
  return buf;
}

/// Independent matrix exponential: scale the argument until its row-sum
/// norm is small, sum the Taylor series, then square back up.  Slow and
/// simple on purpose; it shares no code with the spectral path it checks.
Eigen::MatrixXd series_exponential(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd s = a;
  int squarings = 0;
  double norm = s.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    s /= 2.0;
    norm /= 2.0;
    ++squarings;
  }
  const auto n = a.rows();
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 60; ++k) {
    term = (term * s / static_cast<double>(k)).eval();
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = (result * result).eval();
  return result;
}

Graph reverse_labels(const Graph& g) {
  const int n = g.size();
  Graph h;
  h.labels.assign(g.labels.rbegin(), g.labels.rend());
  h.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h.weights(n - 1 - i, n - 1 - j) = g.weights(i, j);
  h.self_loops_dropped = g.self_loops_dropped;
  return h;
}

struct Runner {
  int failures = 0;

  void check(const char* name, const std::function<std::string()>& body) {
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (detail.empty()) {
      std::printf("ok    %s\n", name);
    } else {
      std::printf("FAIL  %s: %s\n", name, detail.c_str());
      ++failures;
    }
  }

  void note(const char* name, const std::string& text) {
    std::printf("note  %s: %s\n", name, text.c_str());
  }
};

}  // namespace

int run(const Graph& g, MetricVariant variant) {
  Runner r;
  const int n = g.size();
  const Eigen::MatrixXd L = laplacian(g);
  const double lscale = std::max(1.0, L.cwiseAbs().maxCoeff());
  SpectralDecomposition d;
  IntrinsicMetric m;

  r.check("laplacian_row_sums", [&] {
    const double worst = L.rowwise().sum().cwiseAbs().maxCoeff();
    return worst <= 1e-12 * lscale ? "" : describe(worst, 1e-12 * lscale);
  });

  r.check("laplacian_positive_semidefinite", [&] {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v(i) = normal(rng);
      const double q = v.dot(L * v);
      if (q < -1e-10 * lscale * v.squaredNorm())
        return std::string("negative quadratic form");
    }
    return std::string();
  });

  r.check("spectrum_decomposes", [&] {
    d = eigendecompose(L);
    return "";
  });
  if (d.size() != n) {
    // the decomposition check above has already counted the failure
    r.failures = std::max(r.failures, 1);
    std::printf("verify: %d checks failed\n", r.failures);
    return r.failures;
  }

  r.check("spectrum_ascending", [&] {
    for (int k = 1; k < n; ++k)
      if (d.eigenvalues(k) < d.eigenvalues(k - 1))
        return std::string("eigenvalues are not sorted");
    return std::string();
  });

  r.check("spectrum_residuals", [&] {
    const double worst =
        (L * d.eigenvectors - d.eigenvectors * d.eigenvalues.asDiagonal())
            .cwiseAbs()
            .maxCoeff();
    const double limit = 1e-8 * std::max(1.0, d.lambda_max());
    return worst <= limit ? "" : describe(worst, limit);
  });

  r.check("spectrum_orthonormal", [&] {
    Eigen::MatrixXd gram = d.eigenvectors.transpose() * d.eigenvectors;
    gram.diagonal().array() -= 1.0;
    const double worst = gram.cwiseAbs().maxCoeff();
    return worst <= 1e-10 ? "" : describe(worst, 1e-10);
  });

  r.check("spectrum_ground_state", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    const double want = 1.0 / std::sqrt(static_cast<double>(n));
    const double worst =
        (d.eigenvectors.col(0).array() - want).abs().maxCoeff();
    return worst <= 1e-8 ? "" : describe(worst, 1e-8);
  });

  r.check("heat_identity_at_zero", [&] {
    Eigen::MatrixXd h = heat_kernel(d, 0.0);
    h.diagonal().array() -= 1.0;
    return h.cwiseAbs().maxCoeff() == 0.0 ? "" : "H_0 is not the identity";
  });

  r.check("heat_rows_stochastic", [&] {
    for (double t : {0.3, 1.0, 2.5}) {
      const double worst = (heat_kernel(d, t).rowwise().sum().array() - 1.0)
                               .abs()
                               .maxCoeff();
      if (worst > 1e-10) return describe(worst, 1e-10);
    }
    return std::string();
  });

  r.check("heat_semigroup", [&] {
    const double worst = (heat_kernel(d, 0.6) * heat_kernel(d, 0.9) -
                          heat_kernel(d, 1.5))
                             .cwiseAbs()
                             .maxCoeff();
    return worst <= 1e-8 ? "" : describe(worst, 1e-8);
  });

  r.check("heat_matches_series_exponential", [&] {
    const double worst =
        (heat_kernel(d, 1.0) - series_exponential(-L)).cwiseAbs().maxCoeff();
    return worst <= 1e-7 ? "" : describe(worst, 1e-7);
  });

  r.check("metric_builds", [&] {
    m = intrinsic_metric(g, variant);
    return "";
  });
  const bool metric_ready = m.dist.rows() == n;

  r.check("metric_axioms", [&] {
    if (!metric_ready) return std::string("metric unavailable");
    for (int i = 0; i < n; ++i) {
      if (m.dist(i, i) != 0.0) return std::string("nonzero diagonal");
      for (int j = 0; j < n; ++j) {
        if (m.dist(i, j) < 0.0) return std::string("negative distance");
        if (m.dist(i, j) != m.dist(j, i)) return std::string("asymmetry");
        if (i != j && m.dist(i, j) == 0.0)
          return std::string("distinct vertices at distance zero");
      }
    }
    return std::string();
  });

  r.check("metric_triangle_inequality", [&] {
    if (!metric_ready) return std::string("metric unavailable");
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (m.dist(x, z) > m.dist(x, y) + m.dist(y, z) + 1e-12)
            return std::string("triangle inequality fails");
    return std::string();
  });

  r.check("metric_jump_size", [&] {
    if (!metric_ready) return std::string("metric unavailable");
    double longest = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        longest = std::max(longest, m.edge_length(i, j));
    return m.jump_size == longest ? "" : std::string("jump size is stale");
  });

  if (variant == MetricVariant::degree_normalized) {
    r.check("metric_intrinsic", [&] {
      if (!metric_ready) return std::string("metric unavailable");
      IntrinsicAudit audit = verify_intrinsic(m);
      if (audit.intrinsic) return std::string();
      return "vertex sums reach " + std::to_string(audit.max_vertex_sum);
    });
  } else if (metric_ready) {
    IntrinsicAudit audit = verify_intrinsic(m);
    r.note("metric_intrinsic",
           audit.intrinsic
               ? "holds for this graph"
               : "does not hold here (expected for this variant); largest "
                 "vertex sum " +
                     std::to_string(audit.max_vertex_sum));
  }

  r.check("kernel_admissibility", [&] {
    // trapezoid-free composite Simpson of x e^{-2x} over [0, 40]
    const int panels = 16000;
    const double h = 40.0 / panels;
    auto f = [](double x) { return x * std::exp(-2.0 * x); };
    double sum = f(0.0) + f(40.0);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
    const double integral = sum * h / 3.0;
    const double err = std::abs(integral - admissibility_constant());
    return err <= 1e-10 ? "" : describe(err, 1e-10);
  });

  r.check("default_scale_ladder", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    auto s = default_scales(d.lambda_1(), d.lambda_max(), 9);
    if (s.size() != 9) return std::string("wrong scale count");
    const double lo = 1.0 / d.lambda_max(), hi = 1.0 / d.lambda_1();
    if (std::abs(s.front() - lo) > 1e-12 * lo ||
        std::abs(s.back() - hi) > 1e-12 * hi)
      return std::string("ladder endpoints are off");
    return std::string();
  });

  const double mid_scale =
      d.connected ? 1.0 / std::sqrt(d.lambda_1() * d.lambda_max()) : 1.0;

  r.check("wavelet_atoms_zero_mean", [&] {
    for (int x = 0; x < n; ++x) {
      const double total = wavelet_atom(d, mid_scale, x).sum();
      if (std::abs(total) > 1e-10) return describe(std::abs(total), 1e-10);
    }
    return std::string();
  });

  r.check("wavelet_operator_identity", [&] {
    const double s = mid_scale;
    const double worst =
        (wavelet_operator(d, s) - s * L * heat_kernel(d, s))
            .cwiseAbs()
            .maxCoeff();
    const double limit = 1e-9 * std::max(1.0, d.lambda_max());
    return worst <= limit ? "" : describe(worst, limit);
  });

  r.check("wavelet_matches_heat_derivative", [&] {
    const double t = mid_scale, h = 1e-6 * t;
    Eigen::MatrixXd fd =
        -t * (heat_kernel(d, t + h) - heat_kernel(d, t - h)) / (2.0 * h);
    const double scale =
        std::max(1e-12, wavelet_operator(d, t).cwiseAbs().maxCoeff());
    const double worst =
        (wavelet_operator(d, t) - fd).cwiseAbs().maxCoeff() / scale;
    return worst <= 1e-5 ? "" : describe(worst, 1e-5);
  });

  r.check("transform_diagonalizes", [&] {
    std::vector<double> scales{mid_scale};
    for (int k = 1; k < std::min(n, 4); ++k) {
      Eigen::VectorXd f = d.eigenvectors.col(k);
      Eigen::MatrixXd w = transform(d, scales, f);
      const double want = kernel_g(mid_scale * d.eigenvalues(k));
      const double worst = (w.row(0).transpose() - want * f).cwiseAbs().maxCoeff();
      if (worst > 1e-10) return describe(worst, 1e-10);
    }
    return std::string();
  });

  r.check("transform_kills_constants", [&] {
    std::vector<double> scales{mid_scale};
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const double worst =
        transform(d, scales, ones).cwiseAbs().maxCoeff();
    return worst <= 1e-12 ? "" : describe(worst, 1e-12);
  });

  r.check("frame_sandwich", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    if (n < 2) return std::string();
    auto scales = default_scales(d.lambda_1(), d.lambda_max(), 9);
    FrameBounds b = frame_bounds(d, scales);
    std::mt19937_64 rng(42);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 200; ++trial) {
      Eigen::VectorXd f(n);
      for (int i = 0; i < n; ++i) f(i) = normal(rng);
      f.array() -= f.mean();
      const double energy = transform(d, scales, f).array().square().sum();
      const double n2 = f.squaredNorm();
      if (energy < b.A * n2 * (1.0 - 1e-10) ||
          energy > b.B * n2 * (1.0 + 1e-10))
        return std::string("signal energy escapes the frame bounds");
    }
    return std::string();
  });

  r.check("reconstruction_roundtrip", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    if (n < 2) return std::string();
    auto scales = default_scales(d.lambda_1(), d.lambda_max(), 9);
    WaveletFrame frame =
        make_frame(std::make_shared<SpectralDecomposition>(d), scales);
    std::mt19937_64 rng(43);
    std::normal_distribution<double> normal;
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f(i) = normal(rng);
    f.array() -= f.mean();
    Eigen::VectorXd back = reconstruct(frame, transform(d, frame.scales, f));
    const double worst = (back - f).cwiseAbs().maxCoeff();
    return worst <= 1e-8 ? "" : describe(worst, 1e-8);
  });

  r.check("rate_function_basics", [&] {
    for (double s : {0.3, 1.0, 2.5})
      for (double t : {0.1, 1.0, 6.0}) {
        if (zeta(s, t, 0.0) != 0.0) return std::string("zeta(.,.,0) != 0");
        double prev = 0.0;
        for (double rr = 0.5; rr <= 5.0; rr += 0.5) {
          const double z = zeta(s, t, rr);
          if (z < prev) return std::string("zeta decreases in distance");
          prev = z;
        }
      }
    return std::string();
  });

  r.check("rate_derivative_matches_differences", [&] {
    for (double s : {0.3, 1.0, 2.5})
      for (double t : {0.1, 1.0, 6.0})
        for (double rr : {0.25, 1.0, 3.0}) {
          const double h = 1e-6 * t;
          const double fd =
              (zeta(s, t + h, rr) - zeta(s, t - h, rr)) / (2.0 * h);
          const double got = zeta_dt(s, t, rr);
          if (got > 0.0) return std::string("positive time derivative");
          if (std::abs(got - fd) > 1e-6 * std::abs(fd))
            return std::string("finite differences disagree");
        }
    return std::string();
  });

  r.check("heat_localization_sweep", [&] {
    if (!metric_ready) return std::string("metric unavailable");
    auto report = verify_localization(g, m, BoundTarget::heat);
    if (!report.violations.empty())
      return std::to_string(report.violations.size()) +
             " samples exceed the decay bound";
    return std::string();
  });

  r.check("wavelet_localization_sweep", [&] {
    if (!metric_ready) return std::string("metric unavailable");
    auto report = verify_localization(g, m, BoundTarget::wavelet);
    if (!report.violations.empty())
      return std::to_string(report.violations.size()) +
             " samples exceed the derivative bound";
    return std::string();
  });

  r.check("diffusion_time_closed_vs_quadrature", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    Eigen::VectorXd closed = mdt_closed_form(d);
    Eigen::VectorXd numeric = mdt_numeric_all(d);
    for (int x = 0; x < n; ++x)
      if (std::abs(numeric(x) - closed(x)) > 1e-6 * closed(x))
        return std::string("quadrature disagrees at vertex ") + g.labels[x];
    return std::string();
  });

  r.check("centrality_spectral_vs_solve", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    Eigen::VectorXd spectral = information_centrality(d);
    Eigen::VectorXd solved = ic_oracle(g);
    const double worst =
        ((spectral - solved).array() / spectral.array()).abs().maxCoeff();
    return worst <= 1e-8 ? "" : describe(worst, 1e-8);
  });

  r.check("leader_sets_agree", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    CentralityReport report = select_leader(g, d);
    if (!report.mdt_ic_consistent)
      return std::string("diffusion-time and centrality extremal sets differ");
    if (report.tie_set.empty() || report.tie_set.front() != report.leader)
      return std::string("leader is not the first tied label");
    return std::string();
  });

  r.check("diffusion_time_scaling", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    Graph doubled = g;
    doubled.weights *= 2.0;
    Eigen::VectorXd base = mdt_closed_form(d);
    Eigen::VectorXd scaled =
        mdt_closed_form(eigendecompose(laplacian(doubled)));
    const double worst =
        ((base / 2.0 - scaled).array() / scaled.array()).abs().maxCoeff();
    return worst <= 1e-9 ? "" : describe(worst, 1e-9);
  });

  r.check("sign_flip_invariance", [&] {
    SpectralDecomposition flipped = d;
    for (int k = 1; k < n; k += 2)
      flipped.eigenvectors.col(k) = -flipped.eigenvectors.col(k);
    const double dh =
        (heat_kernel(d, 0.7) - heat_kernel(flipped, 0.7)).cwiseAbs().maxCoeff();
    const double dm = d.connected
                          ? (mdt_closed_form(d) - mdt_closed_form(flipped))
                                .cwiseAbs()
                                .maxCoeff()
                          : 0.0;
    return dh <= 1e-12 && dm <= 1e-12 ? "" : "reported values moved";
  });

  r.check("relabel_invariance", [&] {
    if (!d.connected) return std::string("graph is disconnected");
    Graph h = reverse_labels(g);
    CentralityReport a = select_leader(g);
    CentralityReport b = select_leader(h);
    if (a.leader != b.leader || a.tie_set != b.tie_set)
      return std::string("leader report changed under relabeling");
    for (int i = 0; i < n; ++i)
      if (std::abs(a.mdt(i) - b.mdt(n - 1 - i)) > 1e-10)
        return std::string("diffusion times moved under relabeling");
    return std::string();
  });

  if (r.failures == 0)
    std::printf("verify: all checks passed\n");
  else
    std::printf("verify: %d checks failed\n", r.failures);
  return r.failures;
}

}  // namespace hgw::selfcheck
