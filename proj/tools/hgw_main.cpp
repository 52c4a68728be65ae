// SPDX-License-Identifier: Apache-2.0
// hgw: heat-kernel graph wavelets from the command line -- spectra,
// localization bound sweeps, and diffusion-based leader detection.
//
// Exit codes: 0 success, 1 verification found violations, 2 usage error,
// 3 input error.
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hgw/hgw.hpp"
#include "json.hpp"
#include "selfcheck.hpp"

namespace {

using nlohmann::json;

/// Flag misuse discovered after parsing (bad enum value, impossible grid).
struct UsageError {
  std::string message;
};

/// All flags of all subcommands; each subcommand binds the subset it uses.
struct Options {
  std::string input;
  std::string input_format = "auto";
  std::string metric = "degree-normalized";
  std::string format;  // empty -> per-command default
  std::string output;
  std::string signal;
  std::string samples;
  std::string target = "heat";
  std::string vertex;
  double time = 1.0;
  double scale = 0.0;
  int scales = 9;
  double tmin = 0.0;
  double tmax = 0.0;
  int tpoints = 40;
  std::uint64_t seed = 42;
  bool eigenvectors = false;
};

/// 17 significant digits: enough for a lossless double round-trip.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

hgw::GraphFormat input_format(const Options& o) {
  if (o.input_format == "auto") return hgw::GraphFormat::automatic;
  if (o.input_format == "edgelist") return hgw::GraphFormat::edge_list;
  if (o.input_format == "matrixmarket") return hgw::GraphFormat::matrix_market;
  throw UsageError{"unknown input format '" + o.input_format +
                   "' (expected auto, edgelist or matrixmarket)"};
}

hgw::MetricVariant metric_variant(const Options& o) {
  if (o.metric == "degree-normalized")
    return hgw::MetricVariant::degree_normalized;
  // "paper" is an older name for the inverse-root-weight variant, kept
  // so existing scripts continue to run.
  if (o.metric == "inverse-root-weight" || o.metric == "paper")
    return hgw::MetricVariant::inverse_root_weight;
  throw UsageError{"unknown metric variant '" + o.metric +
                   "' (expected degree-normalized or inverse-root-weight)"};
}

const char* metric_name(hgw::MetricVariant v) {
  return v == hgw::MetricVariant::degree_normalized ? "degree-normalized"
                                                    : "inverse-root-weight";
}

std::string report_format(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "csv" && f != "json")
    throw UsageError{"unknown output format '" + f +
                     "' (expected csv or json)"};
  return f;
}

hgw::Graph load(const Options& o) { return hgw::load_graph(o.input, input_format(o)); }

void emit(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out)
    throw hgw::Error(hgw::errc::malformed_input,
                     "cannot write output file: " + path);
}

void emit_json(const json& j, const std::string& path) {
  emit(j.dump(2) + "\n", path);
}

/// Time grid for sweeps: spectrum-derived defaults, log-spaced, with
/// --tmin/--tmax/--tpoints overriding endpoints and resolution.
std::vector<double> time_grid(const hgw::SpectralDecomposition& d,
                              const Options& o) {
  if (o.tpoints < 2) throw UsageError{"--tpoints needs at least 2 points"};
  std::vector<double> grid = hgw::default_time_grid(d, o.tpoints);
  if (o.tmin > 0.0 || o.tmax > 0.0) {
    const double lo = o.tmin > 0.0 ? o.tmin : grid.front();
    const double hi = o.tmax > 0.0 ? o.tmax : grid.back();
    if (!(lo > 0.0) || !(hi >= lo))
      throw UsageError{"time grid needs 0 < tmin <= tmax"};
    const double ratio = hi / lo;
    for (int i = 0; i < o.tpoints; ++i)
      grid[i] =
          lo * std::pow(ratio, static_cast<double>(i) / (o.tpoints - 1));
  }
  return grid;
}

/// Signal files hold either one value per line (vertex order) or
/// "label value" pairs; '#' starts a comment.
Eigen::VectorXd read_signal(const std::string& path, const hgw::Graph& g) {
  std::ifstream in(path);
  if (!in)
    throw hgw::Error(hgw::errc::malformed_input,
                     "cannot open signal file: " + path);
  auto parse_value = [&](const std::string& token, long line_no) {
    double v = 0.0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw hgw::Error(hgw::errc::malformed_line,
                       "signal file line " + std::to_string(line_no) +
                           ": bad number '" + token + "'");
    return v;
  };

  std::vector<std::pair<std::string, double>> labeled;
  std::vector<double> positional;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream row(line);
    std::vector<std::string> tokens;
    for (std::string tok; row >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() == 1) {
      positional.push_back(parse_value(tokens[0], line_no));
    } else if (tokens.size() == 2) {
      labeled.emplace_back(tokens[0], parse_value(tokens[1], line_no));
    } else {
      throw hgw::Error(hgw::errc::malformed_line,
                       "signal file line " + std::to_string(line_no) +
                           ": expected 'value' or 'label value'");
    }
  }
  if (!labeled.empty() && !positional.empty())
    throw hgw::Error(hgw::errc::malformed_input,
                     "signal file mixes bare values with labeled values");

  const int n = g.size();
  Eigen::VectorXd f(n);
  if (!labeled.empty()) {
    std::vector<bool> seen(n, false);
    for (const auto& [label, value] : labeled) {
      const int x = g.index_of(label);
      if (seen[x])
        throw hgw::Error(hgw::errc::malformed_input,
                         "signal file repeats vertex '" + label + "'");
      seen[x] = true;
      f(x) = value;
    }
    for (int x = 0; x < n; ++x)
      if (!seen[x])
        throw hgw::Error(hgw::errc::malformed_input,
                         "signal file has no value for vertex '" +
                             g.labels[x] + "'");
  } else {
    if (static_cast<int>(positional.size()) != n)
      throw hgw::Error(hgw::errc::dimension_mismatch,
                       "signal file has " + std::to_string(positional.size()) +
                           " values for " + std::to_string(n) + " vertices");
    for (int x = 0; x < n; ++x) f(x) = positional[x];
  }
  return f;
}

int run_info(const Options& o) {
  hgw::Graph g = load(o);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  long edges = 0;
  for (int x = 0; x < g.size(); ++x)
    for (int y = x + 1; y < g.size(); ++y)
      if (g.weights(x, y) > 0.0) ++edges;

  if (report_format(o, "json") == "json") {
    json j;
    j["vertices"] = g.size();
    j["edges"] = edges;
    j["connected"] = d.connected;
    j["lambda_max"] = d.lambda_max();
    if (d.connected) j["lambda_1"] = d.lambda_1();
    j["self_loops_dropped"] = g.self_loops_dropped;
    emit_json(j, o.output);
    return 0;
  }
  std::string csv = "field,value\n";
  csv += "vertices," + std::to_string(g.size()) + "\n";
  csv += "edges," + std::to_string(edges) + "\n";
  csv += std::string("connected,") + (d.connected ? "true" : "false") + "\n";
  if (d.connected) csv += "lambda_1," + fmt(d.lambda_1()) + "\n";
  csv += "lambda_max," + fmt(d.lambda_max()) + "\n";
  csv += "self_loops_dropped," + std::to_string(g.self_loops_dropped) + "\n";
  emit(csv, o.output);
  return 0;
}

int run_spectrum(const Options& o) {
  hgw::Graph g = load(o);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  const int n = d.size();

  if (report_format(o, "csv") == "json") {
    json j;
    j["labels"] = g.labels;
    j["eigenvalues"] = json::array();
    for (int k = 0; k < n; ++k) j["eigenvalues"].push_back(d.eigenvalues(k));
    if (o.eigenvectors) {
      j["eigenvectors"] = json::array();
      for (int x = 0; x < n; ++x) {
        json row = json::array();
        for (int k = 0; k < n; ++k) row.push_back(d.eigenvectors(x, k));
        j["eigenvectors"].push_back(row);
      }
    }
    emit_json(j, o.output);
    return 0;
  }

  std::string csv;
  if (o.eigenvectors) {
    // dense matrix, one row per vertex, one column per mode
    csv = "vertex";
    for (int k = 0; k < n; ++k) csv += ",phi_" + std::to_string(k);
    csv += "\n";
    for (int x = 0; x < n; ++x) {
      csv += g.labels[x];
      for (int k = 0; k < n; ++k) csv += "," + fmt(d.eigenvectors(x, k));
      csv += "\n";
    }
  } else {
    csv = "k,lambda\n";
    for (int k = 0; k < n; ++k)
      csv += std::to_string(k) + "," + fmt(d.eigenvalues(k)) + "\n";
  }
  emit(csv, o.output);
  return 0;
}

int run_heat(const Options& o) {
  hgw::Graph g = load(o);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  Eigen::MatrixXd h = hgw::heat_kernel(d, o.time);
  const int n = g.size();

  if (report_format(o, "csv") == "json") {
    json j;
    j["t"] = o.time;
    j["labels"] = g.labels;
    j["matrix"] = json::array();
    for (int x = 0; x < n; ++x) {
      json row = json::array();
      for (int y = 0; y < n; ++y) row.push_back(h(x, y));
      j["matrix"].push_back(row);
    }
    emit_json(j, o.output);
    return 0;
  }
  std::string csv = "x,y,value\n";
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      csv += g.labels[x] + "," + g.labels[y] + "," + fmt(h(x, y)) + "\n";
  emit(csv, o.output);
  return 0;
}

int run_wavelet(const Options& o) {
  hgw::Graph g = load(o);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  const int center = g.index_of(o.vertex);
  Eigen::VectorXd psi = hgw::wavelet_atom(d, o.scale, center);

  if (report_format(o, "csv") == "json") {
    json j;
    j["scale"] = o.scale;
    j["center"] = o.vertex;
    j["labels"] = g.labels;
    j["values"] = json::array();
    for (int y = 0; y < g.size(); ++y) j["values"].push_back(psi(y));
    emit_json(j, o.output);
    return 0;
  }
  std::string csv = "vertex,value\n";
  for (int y = 0; y < g.size(); ++y)
    csv += g.labels[y] + "," + fmt(psi(y)) + "\n";
  emit(csv, o.output);
  return 0;
}

int run_transform(const Options& o) {
  hgw::Graph g = load(o);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  Eigen::VectorXd f = read_signal(o.signal, g);
  std::vector<double> scales =
      hgw::default_scales(d.lambda_1(), d.lambda_max(), o.scales);
  Eigen::MatrixXd w = hgw::transform(d, scales, f);

  if (report_format(o, "csv") == "json") {
    json j;
    j["scales"] = json::array();
    for (double s : scales) j["scales"].push_back(s);
    j["labels"] = g.labels;
    j["coefficients"] = json::array();
    for (int i = 0; i < w.rows(); ++i) {
      json row = json::array();
      for (int y = 0; y < g.size(); ++y) row.push_back(w(i, y));
      j["coefficients"].push_back(row);
    }
    emit_json(j, o.output);
    return 0;
  }
  std::string csv = "scale,vertex,value\n";
  for (int i = 0; i < w.rows(); ++i)
    for (int y = 0; y < g.size(); ++y)
      csv += fmt(scales[i]) + "," + g.labels[y] + "," + fmt(w(i, y)) + "\n";
  emit(csv, o.output);
  return 0;
}

int run_frame(const Options& o) {
  hgw::Graph g = load(o);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  std::vector<double> scales =
      hgw::default_scales(d.lambda_1(), d.lambda_max(), o.scales);
  hgw::FrameBounds b = hgw::frame_bounds(d, scales);

  if (report_format(o, "json") == "json") {
    json j;
    j["scales"] = json::array();
    for (double s : scales) j["scales"].push_back(s);
    j["A"] = b.A;
    j["B"] = b.B;
    emit_json(j, o.output);
    return 0;
  }
  std::string csv = "field,value\n";
  csv += "A," + fmt(b.A) + "\n";
  csv += "B," + fmt(b.B) + "\n";
  for (std::size_t i = 0; i < scales.size(); ++i)
    csv += "scale_" + std::to_string(i) + "," + fmt(scales[i]) + "\n";
  emit(csv, o.output);
  return 0;
}

std::string samples_csv(const hgw::Graph& g,
                        const std::vector<hgw::LocalizationSample>& samples) {
  std::string csv = "t,x,y,r,actual,bound,ratio\n";
  for (const auto& s : samples)
    csv += fmt(s.t) + "," + g.labels[s.x] + "," + g.labels[s.y] + "," +
           fmt(s.r) + "," + fmt(s.actual) + "," + fmt(s.bound) + "," +
           fmt(s.ratio) + "\n";
  return csv;
}

int run_localize(const Options& o) {
  hgw::Graph g = load(o);
  const hgw::MetricVariant variant = metric_variant(o);
  hgw::BoundTarget target;
  if (o.target == "heat")
    target = hgw::BoundTarget::heat;
  else if (o.target == "wavelet")
    target = hgw::BoundTarget::wavelet;
  else
    throw UsageError{"unknown target '" + o.target +
                     "' (expected heat or wavelet)"};

  hgw::IntrinsicMetric m = hgw::intrinsic_metric(g, variant);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  hgw::LocalizationOptions opts;
  opts.seed = o.seed;
  hgw::LocalizationReport report =
      hgw::verify_localization(g, m, d, time_grid(d, o), target, opts);

  if (!report.metric_intrinsic)
    std::fprintf(stderr,
                 "warning: the %s metric is not intrinsic on this graph; "
                 "the decay bounds are not guaranteed\n",
                 metric_name(variant));
  if (!o.samples.empty()) emit(samples_csv(g, report.samples), o.samples);

  if (report_format(o, "json") == "json") {
    json j;
    j["metric"] = metric_name(variant);
    j["metric_intrinsic"] = report.metric_intrinsic;
    j["target"] = o.target;
    j["jump_size"] = report.jump_size;
    j["relative_tolerance"] = report.relative_tolerance;
    j["noise_floor"] = report.noise_floor;
    j["sample_count"] = report.samples.size();
    j["violation_count"] = report.violations.size();
    j["vacuous_count"] = report.vacuous_count;
    j["max_ratio"] = report.max_ratio;
    j["violations"] = json::array();
    for (const auto& s : report.violations) {
      json row;
      row["t"] = s.t;
      row["x"] = g.labels[s.x];
      row["y"] = g.labels[s.y];
      row["r"] = s.r;
      row["actual"] = s.actual;
      row["bound"] = s.bound;
      row["ratio"] = s.ratio;
      j["violations"].push_back(row);
    }
    if (target == hgw::BoundTarget::wavelet) {
      json b;
      b["vacuous_count"] = report.bracket_vacuous_count;
      b["violation_count"] = report.bracket_violation_count;
      b["ratio_min"] = report.bracket_ratio_min;
      b["ratio_max"] = report.bracket_ratio_max;
      j["bracket"] = b;
    }
    emit_json(j, o.output);
  } else {
    emit(samples_csv(g, report.samples), o.output);
  }
  return report.violations.empty() ? 0 : 1;
}

int run_centrality(const Options& o) {
  hgw::Graph g = load(o);
  hgw::CentralityReport r = hgw::select_leader(g);

  if (report_format(o, "json") == "json") {
    json j;
    j["vertices"] = json::array();
    for (std::size_t rank = 0; rank < r.ranking.size(); ++rank) {
      const int x = r.ranking[rank];
      json row;
      row["label"] = g.labels[x];
      row["mdt"] = r.mdt(x);
      row["ic"] = r.ic(x);
      row["rank"] = rank + 1;
      j["vertices"].push_back(row);
    }
    j["leader"] = r.leader;
    j["tie_set"] = r.tie_set;
    emit_json(j, o.output);
    return 0;
  }
  std::string csv = "label,mdt,ic,rank\n";
  for (std::size_t rank = 0; rank < r.ranking.size(); ++rank) {
    const int x = r.ranking[rank];
    csv += g.labels[x] + "," + fmt(r.mdt(x)) + "," + fmt(r.ic(x)) + "," +
           std::to_string(rank + 1) + "\n";
  }
  emit(csv, o.output);
  return 0;
}

int run_leader(const Options& o) {
  hgw::Graph g = load(o);
  hgw::CentralityReport r = hgw::select_leader(g);
  if (r.tie_set.size() > 1) {
    std::string joined;
    for (const auto& label : r.tie_set)
      joined += (joined.empty() ? "" : ", ") + label;
    std::fprintf(stderr, "note: %zu vertices tied within tolerance: %s\n",
                 r.tie_set.size(), joined.c_str());
  }
  emit(r.leader + "\n", o.output);
  return 0;
}

int run_verify(const Options& o) {
  hgw::Graph g = load(o);
  return hgw::selfcheck::run(g, metric_variant(o)) == 0 ? 0 : 1;
}

void add_io(CLI::App* c, Options& o) {
  c->add_option("input", o.input, "graph file (edge list or Matrix Market)")
      ->required();
  c->add_option("--input-format", o.input_format,
                "input format: auto, edgelist or matrixmarket")
      ->capture_default_str();
  c->add_option("--output", o.output,
                "write the report to this file instead of standard output");
}

void add_format(CLI::App* c, Options& o, const char* fallback) {
  c->add_option("--format", o.format,
                std::string("output format: csv or json (default ") +
                    fallback + ")");
}

void add_metric(CLI::App* c, Options& o) {
  c->add_option("--metric", o.metric,
                "vertex metric: degree-normalized or inverse-root-weight")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "heat-kernel graph wavelets: spectra, localization bounds and "
      "diffusion centrality"};
  app.require_subcommand(1);
  Options o;

  CLI::App* info = app.add_subcommand("info", "basic graph facts");
  add_io(info, o);
  add_format(info, o, "json");

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Laplacian eigenvalues (k,lambda)");
  add_io(spectrum, o);
  add_format(spectrum, o, "csv");
  spectrum->add_flag("--eigenvectors", o.eigenvectors,
                     "emit the dense eigenvector matrix instead");

  CLI::App* heat = app.add_subcommand("heat", "heat kernel at one time");
  add_io(heat, o);
  add_format(heat, o, "csv");
  heat->add_option("--time", o.time, "diffusion time t >= 0")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CLI::App* wavelet =
      app.add_subcommand("wavelet", "one wavelet atom (vertex,value)");
  add_io(wavelet, o);
  add_format(wavelet, o, "csv");
  wavelet->add_option("--scale", o.scale, "wavelet scale s > 0")
      ->check(CLI::PositiveNumber)
      ->required();
  wavelet->add_option("--vertex", o.vertex, "center vertex label")
      ->required();

  CLI::App* transform = app.add_subcommand(
      "transform", "wavelet coefficients of a signal (scale,vertex,value)");
  add_io(transform, o);
  add_format(transform, o, "csv");
  transform
      ->add_option("--signal", o.signal,
                   "signal file: one value per line, or 'label value' lines")
      ->required();
  transform->add_option("--scales", o.scales, "number of dyadic scales")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* frame =
      app.add_subcommand("frame", "frame bounds {scales, A, B}");
  add_io(frame, o);
  add_format(frame, o, "json");
  frame->add_option("--scales", o.scales, "number of dyadic scales")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* localize = app.add_subcommand(
      "localize", "sweep the decay bounds over times and vertex pairs");
  add_io(localize, o);
  add_format(localize, o, "json");
  add_metric(localize, o);
  localize->add_option("--target", o.target, "bound to check: heat or wavelet")
      ->capture_default_str();
  localize->add_option("--samples", o.samples,
                       "also write every sample to this CSV file");
  localize->add_option("--tmin", o.tmin, "first grid time (default: spectral)")
      ->check(CLI::PositiveNumber);
  localize->add_option("--tmax", o.tmax, "last grid time (default: spectral)")
      ->check(CLI::PositiveNumber);
  localize->add_option("--tpoints", o.tpoints, "number of grid times")
      ->capture_default_str();
  localize->add_option("--seed", o.seed, "seed for pair sampling")
      ->capture_default_str();

  CLI::App* centrality = app.add_subcommand(
      "centrality", "diffusion times, centralities and ranking");
  add_io(centrality, o);
  add_format(centrality, o, "json");

  CLI::App* leader =
      app.add_subcommand("leader", "print the leader vertex label");
  add_io(leader, o);

  CLI::App* verify = app.add_subcommand(
      "verify", "run every module's invariant suite against the graph");
  verify
      ->add_option("input", o.input, "graph file (edge list or Matrix Market)")
      ->required();
  verify
      ->add_option("--input-format", o.input_format,
                   "input format: auto, edgelist or matrixmarket")
      ->capture_default_str();
  add_metric(verify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(info)) return run_info(o);
    if (app.got_subcommand(spectrum)) return run_spectrum(o);
    if (app.got_subcommand(heat)) return run_heat(o);
    if (app.got_subcommand(wavelet)) return run_wavelet(o);
    if (app.got_subcommand(transform)) return run_transform(o);
    if (app.got_subcommand(frame)) return run_frame(o);
    if (app.got_subcommand(localize)) return run_localize(o);
    if (app.got_subcommand(centrality)) return run_centrality(o);
    if (app.got_subcommand(leader)) return run_leader(o);
    if (app.got_subcommand(verify)) return run_verify(o);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.message.c_str());
    return 2;
  } catch (const hgw::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
