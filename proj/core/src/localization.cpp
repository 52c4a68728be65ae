// SPDX-License-Identifier: Apache-2.0
#include "hgw/localization.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "hgw/wavelet.hpp"

namespace hgw {
namespace {

void check_str(double s, double t, double r) {
  if (!(s > 0.0))
    throw Error(errc::nonpositive_jump, "jump size must be positive");
  if (!(t > 0.0))
    throw Error(errc::nonpositive_time, "time must be positive");
  if (r < 0.0)
    throw Error(errc::malformed_input, "distance must be nonnegative");
}

void check_vertex(const SpectralDecomposition& d, int x) {
  if (x < 0 || x >= d.size())
    throw Error(errc::invalid_vertex, "vertex index out of range");
}

}  // namespace

double zeta(double s, double t, double r) {
  check_str(s, t, r);
  if (r == 0.0) return 0.0;
  const double x = r * s;
  const double q = std::sqrt(t * t + x * x);
  // t - q rewritten as -x²/(t + q): the direct difference cancels
  // catastrophically when x << t (small jump sizes).
  return (x * std::asinh(x / t) - x * x / (t + q)) / (s * s);
}

double zeta_dt(double s, double t, double r) {
  check_str(s, t, r);
  if (r == 0.0) return 0.0;
  const double x = r * s;
  const double q = std::sqrt(t * t + x * x);
  // (1 - q/t)/s² in cancellation-free form; always <= 0.
  return -(r * r) / (t * (t + q));
}

double heat_bound(double s, double t, double r) {
  return std::exp(-zeta(s, t, r));
}

double pair_constant(const SpectralDecomposition& d, int x, int y) {
  check_vertex(d, x);
  check_vertex(d, y);
  double a = (d.eigenvectors.row(x).array().abs() *
              d.eigenvectors.row(y).array().abs())
                 .sum();
  return std::max(1.0, a);
}

double wavelet_bound(double t, double r, double s, double c) {
  check_str(s, t, r);
  return (t * std::abs(zeta_dt(s, t, r)) + c) * std::exp(-zeta(s, t, r));
}

double wavelet_bound_bracket(double t, double r, double s, double c) {
  check_str(s, t, r);
  const double q = std::sqrt(t * t + s * s * r * r);
  const double bracket =
      (r * r / t) * (1.0 + s / q) / (s * r + q) - (t / q + 1.0) + c / t;
  return bracket * std::exp(-zeta(s, t, r));
}

std::vector<double> default_time_grid(const SpectralDecomposition& d,
                                      int points) {
  if (points < 2)
    throw Error(errc::malformed_input, "time grid needs at least two points");
  const double t_min = 0.01 / d.lambda_max();
  const double t_max = 10.0 / d.lambda_1();
  const double ratio = t_max / t_min;
  std::vector<double> grid;
  grid.reserve(points);
  for (int i = 0; i < points; ++i)
    grid.push_back(t_min * std::pow(ratio, double(i) / double(points - 1)));
  return grid;
}

LocalizationReport verify_localization(const Graph& g,
                                       const IntrinsicMetric& m,
                                       const SpectralDecomposition& d,
                                       const std::vector<double>& t_grid,
                                       BoundTarget target,
                                       const LocalizationOptions& opts) {
  const int n = g.size();
  if (d.size() != n || m.dist.rows() != n)
    throw Error(errc::dimension_mismatch,
                "graph, metric and decomposition sizes disagree");
  if (!d.connected)
    throw Error(errc::disconnected_graph,
                "localization sweep needs a connected graph");

  LocalizationReport report;
  report.metric_variant = m.variant;
  report.target = target;
  report.metric_intrinsic = verify_intrinsic(m).intrinsic;
  report.jump_size = m.jump_size;
  report.relative_tolerance = opts.relative_tolerance;
  report.noise_floor = opts.noise_floor;
  if (n < 2) return report;

  // Off-diagonal pairs: every one when the graph is small, otherwise a
  // seeded sample of distinct pairs, always visited in sorted order.
  std::vector<std::pair<int, int>> pairs;
  const long all = static_cast<long>(n) * (n - 1) / 2;
  if (n <= opts.max_exhaustive || all <= opts.sample_pairs) {
    pairs.reserve(all);
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::set<std::pair<int, int>> chosen;
    while (static_cast<int>(chosen.size()) < opts.sample_pairs) {
      int x = pick(rng), y = pick(rng);
      if (x == y) continue;
      chosen.emplace(std::min(x, y), std::max(x, y));
    }
    pairs.assign(chosen.begin(), chosen.end());
  }

  // Per-pair constants: distance, trivial bound a = sum_k |phi phi|,
  // and the proof constant c = max(1, a).
  const std::size_t np = pairs.size();
  std::vector<double> rr(np), aa(np), cc(np);
  for (std::size_t p = 0; p < np; ++p) {
    auto [x, y] = pairs[p];
    rr[p] = m.dist(x, y);
    aa[p] = (d.eigenvectors.row(x).array().abs() *
             d.eigenvectors.row(y).array().abs())
                .sum();
    cc[p] = std::max(1.0, aa[p]);
  }

  const double s = m.jump_size;
  const double tol = opts.relative_tolerance;
  const double floor = opts.noise_floor;
  bool have_bracket_ratio = false;
  report.samples.reserve(t_grid.size() * np);

  for (double t : t_grid) {
    Eigen::MatrixXd field = target == BoundTarget::heat
                                ? heat_kernel(d, t)
                                : wavelet_operator(d, t);
    for (std::size_t p = 0; p < np; ++p) {
      auto [x, y] = pairs[p];
      LocalizationSample sample;
      sample.t = t;
      sample.x = x;
      sample.y = y;
      sample.r = rr[p];
      sample.actual = std::abs(field(x, y));
      sample.bound = target == BoundTarget::heat
                         ? heat_bound(s, t, sample.r)
                         : wavelet_bound(t, sample.r, s, cc[p]);
      sample.ratio = sample.actual / sample.bound;

      const bool vacuous = sample.bound < 0.0 || sample.bound >= aa[p];
      if (vacuous) {
        ++report.vacuous_count;
      } else if (sample.ratio > report.max_ratio) {
        report.max_ratio = sample.ratio;
      }
      if (sample.actual > sample.bound * (1.0 + tol) + floor)
        report.violations.push_back(sample);

      if (target == BoundTarget::wavelet) {
        const double bracket = wavelet_bound_bracket(t, sample.r, s, cc[p]);
        if (bracket < 0.0 || bracket >= aa[p]) {
          ++report.bracket_vacuous_count;
        } else {
          if (sample.actual > bracket * (1.0 + tol) + floor)
            ++report.bracket_violation_count;
          const double ratio = bracket / sample.bound;
          if (!have_bracket_ratio) {
            report.bracket_ratio_min = report.bracket_ratio_max = ratio;
            have_bracket_ratio = true;
          } else {
            report.bracket_ratio_min = std::min(report.bracket_ratio_min, ratio);
            report.bracket_ratio_max = std::max(report.bracket_ratio_max, ratio);
          }
        }
      }
      report.samples.push_back(sample);
    }
  }
  return report;
}

LocalizationReport verify_localization(const Graph& g,
                                       const IntrinsicMetric& m,
                                       BoundTarget target,
                                       const LocalizationOptions& opts) {
  SpectralDecomposition d = eigendecompose(laplacian(g));
  return verify_localization(g, m, d, default_time_grid(d), target, opts);
}

}  // namespace hgw
