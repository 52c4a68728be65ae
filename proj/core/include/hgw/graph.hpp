// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_GRAPH_HPP
#define HGW_GRAPH_HPP

#include <Eigen/Dense>
#include <istream>
#include <string>
#include <vector>

#include "hgw/errors.hpp"

namespace hgw {

/// Undirected weighted graph with a dense symmetric weight matrix.
/// Vertex labels keep the order of first appearance in the input.
struct Graph {
  std::vector<std::string> labels;
  Eigen::MatrixXd weights;  // symmetric, zero diagonal, nonnegative
  int self_loops_dropped = 0;

  int size() const { return static_cast<int>(labels.size()); }

  /// Index of a label, or throws errc::invalid_vertex.
  int index_of(const std::string& label) const;
};

enum class GraphFormat { edge_list, matrix_market, automatic };

/// Parses whitespace-separated "src dst weight" lines. '#' starts a
/// comment; a missing weight means 1.0. Self-loops are dropped (counted
/// in self_loops_dropped); repeating an edge with a different weight is
/// an error, repeating it with the same weight is fine.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

/// Reads a MatrixMarket coordinate file (general or symmetric pattern
/// handled; vertex labels are the 1-based row/column indices).
Graph read_matrix_market(std::istream& in);

/// Loads a graph from a file, sniffing the format from the extension
/// when format == automatic (.mtx means MatrixMarket, anything else is
/// treated as an edge list).
Graph load_graph(const std::string& path,
                 GraphFormat format = GraphFormat::automatic);

/// Combinatorial Laplacian L = D - W of the weighted graph.
Eigen::MatrixXd laplacian(const Graph& g);

}  // namespace hgw

#endif  // HGW_GRAPH_HPP
