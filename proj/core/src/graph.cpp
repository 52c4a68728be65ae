// SPDX-License-Identifier: Apache-2.0
#include "hgw/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace hgw {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_weight(const std::string& tok, long line_no) {
  double w = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, w);
  if (ec != std::errc() || ptr != last)
    throw Error(errc::malformed_line, "line " + std::to_string(line_no) +
                                          ": cannot parse weight '" + tok + "'");
  if (!std::isfinite(w))
    throw Error(errc::non_finite, "line " + std::to_string(line_no) +
                                      ": weight is not finite");
  if (w < 0.0)
    throw Error(errc::negative_weight, "line " + std::to_string(line_no) +
                                           ": negative weight " + tok);
  return w;
}

long parse_index(const std::string& tok, long line_no) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw Error(errc::malformed_line, "line " + std::to_string(line_no) +
                                          ": cannot parse integer '" + tok + "'");
  return v;
}

void strip_comment(std::string& line) {
  auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
}

struct EdgeAccumulator {
  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index;
  // unordered pair (min,max) -> weight; map keeps edge iteration stable
  std::map<std::pair<int, int>, double> edges;
  int self_loops_dropped = 0;

  int vertex(const std::string& label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(label);
    index.emplace(label, id);
    return id;
  }

  void add_edge(int u, int v, double w, long line_no) {
    if (u == v) {
      ++self_loops_dropped;
      return;
    }
    auto key = std::minmax(u, v);
    auto [it, inserted] = edges.emplace(key, w);
    if (!inserted && it->second != w)
      throw Error(errc::conflicting_duplicate_edge,
                  "line " + std::to_string(line_no) + ": edge {" +
                      labels[key.first] + "," + labels[key.second] +
                      "} seen with weights " + std::to_string(it->second) +
                      " and " + std::to_string(w));
  }

  Graph finish() && {
    Graph g;
    g.labels = std::move(labels);
    const int n = static_cast<int>(g.labels.size());
    g.weights = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [key, w] : edges) {
      g.weights(key.first, key.second) = w;
      g.weights(key.second, key.first) = w;
    }
    g.self_loops_dropped = self_loops_dropped;
    return g;
  }
};

}  // namespace

int Graph::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  throw Error(errc::invalid_vertex, "no vertex labeled '" + label + "'");
}

Graph parse_edge_list(std::istream& in) {
  EdgeAccumulator acc;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_comment(line);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() < 2 || toks.size() > 3)
      throw Error(errc::malformed_line,
                  "line " + std::to_string(line_no) + ": expected 'u v [w]', got " +
                      std::to_string(toks.size()) + " fields");
    double w = toks.size() == 3 ? parse_weight(toks[2], line_no) : 1.0;
    int u = acc.vertex(toks[0]);
    int v = acc.vertex(toks[1]);
    acc.add_edge(u, v, w, line_no);
  }
  return std::move(acc).finish();
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream ss(text);
  return parse_edge_list(ss);
}

Graph read_matrix_market(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw Error(errc::malformed_input, "empty MatrixMarket stream");
  {
    std::istringstream hs(header);
    std::string banner, object, fmt, field, symmetry;
    hs >> banner >> object >> fmt >> field >> symmetry;
    for (auto* s : {&object, &fmt, &field, &symmetry})
      std::transform(s->begin(), s->end(), s->begin(),
                     [](unsigned char c) { return std::tolower(c); });
    if (banner != "%%MatrixMarket" || object != "matrix" || fmt != "coordinate")
      throw Error(errc::malformed_input,
                  "expected '%%MatrixMarket matrix coordinate ...' header");
    if (field != "real" && field != "integer" && field != "pattern")
      throw Error(errc::malformed_input, "unsupported field type '" + field + "'");
    if (symmetry != "symmetric" && symmetry != "general")
      throw Error(errc::malformed_input,
                  "unsupported symmetry '" + symmetry + "'");

    std::string line;
    long line_no = 1;
    long rows = -1, cols = -1, entries = -1;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line[0] == '%') continue;
      auto toks = split_ws(line);
      if (toks.empty()) continue;
      if (toks.size() != 3)
        throw Error(errc::malformed_line,
                    "line " + std::to_string(line_no) + ": expected 'rows cols entries'");
      rows = parse_index(toks[0], line_no);
      cols = parse_index(toks[1], line_no);
      entries = parse_index(toks[2], line_no);
      break;
    }
    if (rows < 0)
      throw Error(errc::malformed_input, "missing size line");
    if (rows != cols)
      throw Error(errc::not_symmetric, "matrix is " + std::to_string(rows) +
                                           "x" + std::to_string(cols) +
                                           ", adjacency must be square");

    const int n = static_cast<int>(rows);
    Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd seen = Eigen::MatrixXd::Zero(n, n);
    int self_loops = 0;
    const bool pattern = field == "pattern";
    long got = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line[0] == '%') continue;
      auto toks = split_ws(line);
      if (toks.empty()) continue;
      if (toks.size() != (pattern ? 2u : 3u))
        throw Error(errc::malformed_line,
                    "line " + std::to_string(line_no) + ": bad entry arity");
      long i = parse_index(toks[0], line_no), j = parse_index(toks[1], line_no);
      if (i < 1 || i > n || j < 1 || j > n)
        throw Error(errc::malformed_line,
                    "line " + std::to_string(line_no) + ": index out of range");
      double w = pattern ? 1.0 : parse_weight(toks[2], line_no);
      ++got;
      if (i == j) {
        ++self_loops;
        continue;
      }
      int a = static_cast<int>(i - 1), b = static_cast<int>(j - 1);
      if (seen(a, b) != 0.0 && raw(a, b) != w)
        throw Error(errc::conflicting_duplicate_edge,
                    "line " + std::to_string(line_no) + ": duplicate entry (" +
                        toks[0] + "," + toks[1] + ") with different value");
      raw(a, b) = w;
      seen(a, b) = 1.0;
      if (symmetry == "symmetric") {
        if (seen(b, a) != 0.0 && raw(b, a) != w)
          throw Error(errc::conflicting_duplicate_edge,
                      "line " + std::to_string(line_no) + ": mirrored entry (" +
                          toks[1] + "," + toks[0] + ") with different value");
        raw(b, a) = w;
        seen(b, a) = 1.0;
      }
    }
    if (got != entries)
      throw Error(errc::malformed_input,
                  "entry count mismatch: header says " + std::to_string(entries) +
                      ", file has " + std::to_string(got));
    if (symmetry == "general") {
      double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
      if ((raw - raw.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw Error(errc::not_symmetric,
                    "general matrix is not symmetric within 1e-12");
      raw = ((raw + raw.transpose()) / 2.0).eval();
    }

    Graph g;
    g.labels.reserve(n);
    for (int i = 0; i < n; ++i) g.labels.push_back(std::to_string(i + 1));
    g.weights = std::move(raw);
    g.self_loops_dropped = self_loops;
    return g;
  }
}

Graph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in)
    throw Error(errc::malformed_input, "cannot open '" + path + "'");
  if (format == GraphFormat::automatic) {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    format = ext == ".mtx" ? GraphFormat::matrix_market : GraphFormat::edge_list;
  }
  return format == GraphFormat::matrix_market ? read_matrix_market(in)
                                              : parse_edge_list(in);
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::VectorXd deg = g.weights.rowwise().sum();
  Eigen::MatrixXd L = -g.weights;
  L.diagonal() += deg;
  return L;
}

}  // namespace hgw
