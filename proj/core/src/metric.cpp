// SPDX-License-Identifier: Apache-2.0
#include "hgw/metric.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <utility>

namespace hgw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Single-source Dijkstra over the dense edge-length matrix.
void shortest_paths_from(const Eigen::MatrixXd& len, int source,
                         Eigen::Ref<Eigen::VectorXd> dist) {
  const int n = static_cast<int>(len.rows());
  dist.setConstant(kInf);
  dist(source) = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist(u)) continue;
    for (int v = 0; v < n; ++v) {
      double l = len(u, v);
      if (l <= 0.0) continue;
      double nd = d + l;
      if (nd < dist(v)) {
        dist(v) = nd;
        heap.emplace(nd, v);
      }
    }
  }
}

}  // namespace

IntrinsicMetric intrinsic_metric(const Graph& g, MetricVariant variant,
                                 bool unweighted_degree) {
  const int n = g.size();
  IntrinsicMetric m;
  m.variant = variant;
  m.edge_length = Eigen::MatrixXd::Zero(n, n);

  Eigen::VectorXd wdeg = g.weights.rowwise().sum();
  if (variant == MetricVariant::degree_normalized) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g.weights(i, j) > 0.0) {
          double l = 1.0 / std::sqrt(std::max(wdeg(i), wdeg(j)));
          m.edge_length(i, j) = m.edge_length(j, i) = l;
        }
  } else {
    // Edge length n_deg / sqrt(w) with n_deg the maximum degree.
    double n_deg = 0.0;
    if (unweighted_degree) {
      for (int i = 0; i < n; ++i)
        n_deg = std::max(n_deg, double((g.weights.row(i).array() > 0.0).count()));
    } else {
      n_deg = n > 0 ? wdeg.maxCoeff() : 0.0;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g.weights(i, j) > 0.0) {
          double l = n_deg / std::sqrt(g.weights(i, j));
          m.edge_length(i, j) = m.edge_length(j, i) = l;
        }
  }

  m.dist = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s) shortest_paths_from(m.edge_length, s, m.dist.col(s));
  m.dist = ((m.dist + m.dist.transpose()) / 2.0).eval();  // kill round-off skew
  if (n > 0 && !m.dist.allFinite())
    throw Error(errc::disconnected_graph,
                "graph is disconnected: some distances are infinite");

  m.jump_size = n > 0 ? m.edge_length.maxCoeff() : 0.0;
  m.vertex_sums = (g.weights.array() * m.edge_length.array().square())
                      .rowwise()
                      .sum();
  return m;
}

IntrinsicAudit verify_intrinsic(const IntrinsicMetric& m) {
  IntrinsicAudit audit;
  const int n = static_cast<int>(m.vertex_sums.size());
  audit.max_vertex_sum = n > 0 ? m.vertex_sums.maxCoeff() : 0.0;
  for (int i = 0; i < n; ++i)
    if (m.vertex_sums(i) > 1.0 + 1e-12) audit.violating_vertices.push_back(i);
  audit.intrinsic = audit.violating_vertices.empty();
  return audit;
}

}  // namespace hgw
