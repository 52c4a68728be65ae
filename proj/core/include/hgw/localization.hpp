// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_LOCALIZATION_HPP
#define HGW_LOCALIZATION_HPP

#include <cstdint>
#include <vector>

#include "hgw/graph.hpp"
#include "hgw/metric.hpp"
#include "hgw/spectral.hpp"

namespace hgw {

/// Gaussian-type rate function for a metric with jump size s:
///   zeta_s(t,r) = (r*s*asinh(r*s/t) - sqrt(t² + r²s²) + t) / s².
/// Evaluated in a cancellation-free form so small s stays accurate;
/// zeta >= 0, zeta_s(t,0) = 0 exactly, and s -> 0 recovers r²/(2t).
double zeta(double s, double t, double r);

/// Time derivative of zeta at fixed r:
///   d/dt zeta_s(t,r) = (1 - sqrt(t² + r²s²)/t) / s² <= 0,
/// computed as -r²/(t(t + sqrt(t² + r²s²))) to avoid cancellation.
double zeta_dt(double s, double t, double r);

/// Off-diagonal heat kernel bound: H_t(x,y) <= e^{-zeta_s(t, dist(x,y))}.
double heat_bound(double s, double t, double r);

/// Pair constant c(x,y) = max(1, sum_k |phi_k(x) phi_k(y)|). The sum is
/// at most 1 by Cauchy-Schwarz, so c is identically 1; kept as an
/// explicit operation so the bound evaluations spell out their inputs.
double pair_constant(const SpectralDecomposition& d, int x, int y);

/// Wavelet decay bound actually used for pass/fail verification:
///   t * (|zeta_dt(s,t,r)| + c/t) * e^{-zeta_s(t,r)},
/// which majorizes |psi_{t,x}(y)| at r = dist(x,y). Always positive.
double wavelet_bound(double t, double r, double s, double c);

/// Expanded bracket form of the same decay estimate:
///   [ (r²/t)(1 + s/q)/(sr + q) - (t/q + 1) + c/t ] * e^{-zeta},
/// with q = sqrt(t² + s²r²). Its bracket can go negative (vacuous);
/// evaluated for comparison against wavelet_bound, never for pass/fail.
double wavelet_bound_bracket(double t, double r, double s, double c);

/// Which quantity a localization sweep checks against its bound.
enum class BoundTarget { heat, wavelet };

/// One checked (time, vertex pair) sample.
struct LocalizationSample {
  double t = 0.0;
  int x = 0;
  int y = 0;
  double r = 0.0;       // dist(x,y) under the metric
  double actual = 0.0;  // |H_t(x,y)| or |psi_{t,x}(y)|
  double bound = 0.0;
  double ratio = 0.0;   // actual / bound
};

struct LocalizationOptions {
  /// Slack on ratio > 1 before a sample counts as a violation.
  double relative_tolerance = 1e-9;
  /// Absolute allowance for spectral-sum round-off: true values far
  /// below machine precision (tiny t, distant pairs) surface as noise
  /// of order 1e-16, which would otherwise flag bounds that are
  /// mathematically slack by many orders of magnitude.
  double noise_floor = 1e-12;
  /// All off-diagonal pairs up to this vertex count...
  int max_exhaustive = 100;
  /// ...and this many seeded distinct random pairs beyond it.
  int sample_pairs = 10000;
  std::uint64_t seed = 42;
};

/// Sweep summary. Violations are samples with
///   actual > bound * (1 + relative_tolerance) + noise_floor;
/// a sample is vacuous when its bound is negative or at least the
/// trivial bound a(x,y) = sum_k |phi_k(x) phi_k(y)| (such samples are
/// counted but cannot violate). For the wavelet target the bracket
/// form is additionally evaluated on every sample: its vacuous and
/// violation counts plus the bracket/bound ratio range are reported,
/// informationally.
struct LocalizationReport {
  MetricVariant metric_variant = MetricVariant::degree_normalized;
  BoundTarget target = BoundTarget::heat;
  bool metric_intrinsic = false;
  double jump_size = 0.0;
  double relative_tolerance = 0.0;
  double noise_floor = 0.0;
  std::vector<LocalizationSample> samples;
  std::vector<LocalizationSample> violations;
  long vacuous_count = 0;
  double max_ratio = 0.0;  // over non-vacuous samples

  // Bracket-form cross-check (wavelet target only).
  long bracket_vacuous_count = 0;
  long bracket_violation_count = 0;
  double bracket_ratio_min = 0.0;  // bracket / bound over non-vacuous brackets
  double bracket_ratio_max = 0.0;
};

/// Default verification grid: 40 log-spaced times spanning
/// [0.01/lambda_max, 10/lambda_1].
std::vector<double> default_time_grid(const SpectralDecomposition& d,
                                      int points = 40);

/// Checks every grid time against every selected off-diagonal pair.
/// The graph must be connected; a non-intrinsic metric is reported in
/// the result (the caller decides whether to warn), not an error.
LocalizationReport verify_localization(const Graph& g,
                                       const IntrinsicMetric& m,
                                       const SpectralDecomposition& d,
                                       const std::vector<double>& t_grid,
                                       BoundTarget target,
                                       const LocalizationOptions& opts = {});

/// Convenience overload that decomposes the Laplacian and uses the
/// default time grid.
LocalizationReport verify_localization(const Graph& g,
                                       const IntrinsicMetric& m,
                                       BoundTarget target,
                                       const LocalizationOptions& opts = {});

}  // namespace hgw

#endif  // HGW_LOCALIZATION_HPP
