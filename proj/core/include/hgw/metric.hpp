// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_METRIC_HPP
#define HGW_METRIC_HPP

#include <Eigen/Dense>
#include <vector>

#include "hgw/graph.hpp"

namespace hgw {

/// Edge-length conventions for building a distance on the graph.
///
/// degree_normalized assigns each edge {x,y} the length
///   1 / sqrt(max(Deg(x), Deg(y)))
/// with Deg the weighted degree; this always satisfies the intrinsic
/// condition below and is the default everywhere.
///
/// inverse_root_weight assigns edge {x,y} the length n_deg / sqrt(w_xy)
/// where n_deg is the maximum vertex degree (edge count); it is kept for
/// comparison but in general fails the intrinsic condition, which
/// verify_intrinsic will report.
enum class MetricVariant { degree_normalized, inverse_root_weight };

/// A path metric on the vertices of a graph, together with the data the
/// localization bounds need: per-edge lengths, all-pairs shortest-path
/// distances, and the jump size s = max over edges of their length.
struct IntrinsicMetric {
  MetricVariant variant = MetricVariant::degree_normalized;
  Eigen::MatrixXd edge_length;  // zero where there is no edge
  Eigen::MatrixXd dist;         // shortest-path closure of edge_length
  double jump_size = 0.0;
  /// Per-vertex sums sum_{y ~ x} w_xy * rho(x,y)^2; the metric is
  /// intrinsic when every entry is <= 1.
  Eigen::VectorXd vertex_sums;
};

/// Result of checking the intrinsic condition for a metric.
struct IntrinsicAudit {
  bool intrinsic = false;
  double max_vertex_sum = 0.0;
  std::vector<int> violating_vertices;
};

/// Builds the metric for a connected graph. unweighted_degree switches
/// the inverse_root_weight variant's n_deg to the unweighted vertex
/// degree; the degree_normalized variant ignores it.
IntrinsicMetric intrinsic_metric(
    const Graph& g, MetricVariant variant = MetricVariant::degree_normalized,
    bool unweighted_degree = false);

/// Audits the intrinsic condition sum_{y ~ x} w_xy * rho(x,y)^2 <= 1
/// (within 1e-12) at every vertex, from the metric's stored sums.
IntrinsicAudit verify_intrinsic(const IntrinsicMetric& m);

}  // namespace hgw

#endif  // HGW_METRIC_HPP
