// SPDX-License-Identifier: Apache-2.0
// End-to-end tests of the hgw binary: pinned output shapes, exit codes,
// determinism, and the format/metric flag surface.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs the CLI with the given arguments, capturing stdout, stderr and
/// the exit code.
RunResult run(const std::string& args) {
  const std::string err_path = "test_cli_stderr.txt";
  const std::string cmd =
      std::string(HGW_CLI_PATH) + " " + args + " 2>" + err_path;
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char chunk[4096];
  std::size_t got;
  while ((got = fread(chunk, 1, sizeof chunk, pipe)) > 0)
    r.out.append(chunk, got);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  return r;
}

std::string data(const std::string& name) {
  return std::string(HGW_DATA_DIR) + "/" + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  REQUIRE(out.good());
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("leader") {
  SUBCASE("triangle: first label wins, tie reported on stderr") {
    RunResult r = run("leader " + data("k3.tsv"));
    CHECK(r.status == 0);
    CHECK(r.out == "a\n");
    CHECK(r.err.find("3 vertices tied") != std::string::npos);
  }
  SUBCASE("path: the middle vertex leads without a tie note") {
    RunResult r = run("leader " + data("p3.tsv"));
    CHECK(r.status == 0);
    CHECK(r.out == "b\n");
    CHECK(r.err.empty());
  }
  SUBCASE("star: the hub leads") {
    RunResult r = run("leader " + data("s4.tsv"));
    CHECK(r.status == 0);
    CHECK(r.out == "hub\n");
  }
}

TEST_CASE("centrality") {
  write_file("test_cli_edge.tsv", "a b 1\n");
  SUBCASE("single edge: known diffusion time and centrality") {
    RunResult r = run("centrality test_cli_edge.tsv --format json");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    REQUIRE(j["vertices"].size() == 2);
    for (const auto& v : j["vertices"]) {
      CHECK(v["mdt"].get<double>() == doctest::Approx(0.0625).epsilon(1e-12));
      CHECK(v["ic"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(j["leader"] == "a");
    CHECK(j["tie_set"].size() == 2);
    CHECK(j["vertices"][0]["rank"] == 1);
  }
  SUBCASE("csv table carries the same ranking") {
    RunResult r = run("centrality " + data("p3.tsv") + " --format csv");
    CHECK(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "label,mdt,ic,rank");
    CHECK(lines[1].substr(0, 2) == "b,");  // path middle leads
  }
}

TEST_CASE("spectrum") {
  SUBCASE("eigenvalue table of the triangle") {
    RunResult r = run("spectrum " + data("k3.tsv"));
    CHECK(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "k,lambda");
    CHECK(std::abs(std::stod(lines[1].substr(2))) <= 1e-12);
    CHECK(std::stod(lines[2].substr(2)) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::stod(lines[3].substr(2)) == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("dense eigenvector matrix") {
    RunResult r = run("spectrum " + data("k3.tsv") + " --eigenvectors");
    CHECK(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "vertex,phi_0,phi_1,phi_2");
    CHECK(lines[1].substr(0, 2) == "a,");
  }
}

TEST_CASE("heat") {
  SUBCASE("zero time is the exact identity") {
    RunResult r = run("heat " + data("p3.tsv") + " --time 0");
    CHECK(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 10);
    CHECK(lines[0] == "x,y,value");
    CHECK(lines[1] == "a,a,1");
    CHECK(lines[2] == "a,b,0");
  }
  SUBCASE("rows sum to one at positive time") {
    RunResult r = run("heat " + data("k3.tsv") + " --time 0.7 --format json");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["t"] == doctest::Approx(0.7));
    for (const auto& row : j["matrix"]) {
      double sum = 0.0;
      for (const auto& v : row) sum += v.get<double>();
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("wavelet atom") {
  // triangle projector form: psi = 3s e^{-3s} (delta - 1/3)
  RunResult r = run("wavelet " + data("k3.tsv") + " --scale 0.5 --vertex a");
  CHECK(r.status == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "vertex,value");
  const double at_center = std::exp(-1.5);
  const double off_center = -0.5 * std::exp(-1.5);
  CHECK(std::stod(lines[1].substr(2)) ==
        doctest::Approx(at_center).epsilon(1e-12));
  CHECK(std::stod(lines[2].substr(2)) ==
        doctest::Approx(off_center).epsilon(1e-12));
  CHECK(std::stod(lines[3].substr(2)) ==
        doctest::Approx(off_center).epsilon(1e-12));
}

TEST_CASE("transform") {
  SUBCASE("labeled and positional signals give identical bytes") {
    write_file("test_cli_signal_labeled.txt", "a 1\nb 0\nc -1\n");
    write_file("test_cli_signal_positional.txt", "1\n0\n-1\n");
    RunResult a = run("transform " + data("p3.tsv") +
                      " --signal test_cli_signal_labeled.txt --scales 4");
    RunResult b = run("transform " + data("p3.tsv") +
                      " --signal test_cli_signal_positional.txt --scales 4");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    auto lines = lines_of(a.out);
    REQUIRE(lines.size() == 1 + 4 * 3);
    CHECK(lines[0] == "scale,vertex,value");
  }
  SUBCASE("signal with the wrong length is an input error") {
    write_file("test_cli_signal_short.txt", "1\n2\n");
    RunResult r = run("transform " + data("p3.tsv") +
                      " --signal test_cli_signal_short.txt");
    CHECK(r.status == 3);
  }
}

TEST_CASE("frame") {
  RunResult r = run("frame " + data("k3.tsv") + " --scales 3");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  REQUIRE(j["scales"].size() == 3);
  CHECK(j["A"].get<double>() > 0.0);
  CHECK(j["B"].get<double>() >= j["A"].get<double>());
}

TEST_CASE("localize") {
  SUBCASE("complete graph under the degree-normalized metric is clean") {
    RunResult r =
        run("localize " + data("k5.tsv") + " --metric degree-normalized");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["metric"] == "degree-normalized");
    CHECK(j["metric_intrinsic"] == true);
    CHECK(j["violation_count"] == 0);
    CHECK(j["violations"].empty());
    CHECK(j["sample_count"] == 40 * 10);
  }
  SUBCASE("sample dump has the pinned header and row count") {
    RunResult r = run("localize " + data("p3.tsv") +
                      " --samples test_cli_samples.csv");
    CHECK(r.status == 0);
    auto lines = lines_of(slurp("test_cli_samples.csv"));
    REQUIRE(lines.size() == 1 + 40 * 3);
    CHECK(lines[0] == "t,x,y,r,actual,bound,ratio");
  }
  SUBCASE("the non-intrinsic variant can break the bound: exit 1") {
    write_file("test_cli_heavy_edge.tsv", "x y 4\n");
    RunResult r = run("localize test_cli_heavy_edge.tsv"
                      " --metric inverse-root-weight"
                      " --tmin 0.05 --tmax 1 --tpoints 8");
    CHECK(r.status == 1);
    json j = json::parse(r.out);
    CHECK(j["metric_intrinsic"] == false);
    CHECK(j["violation_count"].get<long>() >= 1);
    CHECK(r.err.find("not intrinsic") != std::string::npos);
  }
  SUBCASE("the historical metric name is an alias") {
    write_file("test_cli_heavy_edge.tsv", "x y 4\n");
    RunResult a = run("localize test_cli_heavy_edge.tsv --metric paper");
    RunResult b =
        run("localize test_cli_heavy_edge.tsv --metric inverse-root-weight");
    CHECK(a.status == b.status);
    CHECK(a.out == b.out);
  }
  SUBCASE("wavelet target reports bracket statistics") {
    RunResult r = run("localize " + data("p3.tsv") + " --target wavelet");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["target"] == "wavelet");
    CHECK(j.contains("bracket"));
    CHECK(j["bracket"]["vacuous_count"].get<long>() >= 0);
  }
}

TEST_CASE("verify on every bundled graph exits clean") {
  for (const char* name :
       {"k3.tsv", "k5.tsv", "p3.tsv", "s4.tsv", "random42.tsv"}) {
    RunResult r = run("verify " + data(name));
    CAPTURE(name);
    CHECK(r.status == 0);
    CHECK(r.out.find("verify: all checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("matrix market ingestion") {
  RunResult r = run("info " + data("k3.mtx"));
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["vertices"] == 3);
  CHECK(j["edges"] == 3);
  CHECK(j["connected"] == true);
  CHECK(j["lambda_max"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("output file and determinism") {
  SUBCASE("--output routes the payload to a file") {
    RunResult direct = run("spectrum " + data("k3.tsv"));
    RunResult routed =
        run("spectrum " + data("k3.tsv") + " --output test_cli_out.csv");
    CHECK(routed.status == 0);
    CHECK(routed.out.empty());
    CHECK(slurp("test_cli_out.csv") == direct.out);
  }
  SUBCASE("identical invocations produce identical bytes") {
    const std::string cmd = "localize " + data("random42.tsv") +
                            " --target wavelet --seed 7";
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    RunResult c = run("centrality " + data("random42.tsv"));
    RunResult e = run("centrality " + data("random42.tsv"));
    CHECK(c.out == e.out);
  }
}

TEST_CASE("exit codes") {
  SUBCASE("no subcommand is a usage error") {
    CHECK(run("").status == 2);
  }
  SUBCASE("unknown flag is a usage error") {
    CHECK(run("spectrum " + data("k3.tsv") + " --bogus").status == 2);
  }
  SUBCASE("negative time fails flag validation") {
    CHECK(run("heat " + data("k3.tsv") + " --time -1").status == 2);
  }
  SUBCASE("unknown enum values are usage errors") {
    CHECK(run("localize " + data("k3.tsv") + " --target bogus").status == 2);
    CHECK(run("localize " + data("k3.tsv") + " --metric bogus").status == 2);
    CHECK(run("spectrum " + data("k3.tsv") + " --format bogus").status == 2);
  }
  SUBCASE("missing file is an input error") {
    CHECK(run("spectrum no_such_file.tsv").status == 3);
  }
  SUBCASE("malformed edge list is an input error") {
    write_file("test_cli_bad.tsv", "a b notanumber\n");
    RunResult r = run("spectrum test_cli_bad.tsv");
    CHECK(r.status == 3);
    CHECK(r.err.find("error:") != std::string::npos);
  }
  SUBCASE("unknown vertex label is an input error") {
    CHECK(run("wavelet " + data("k3.tsv") + " --scale 1 --vertex zz").status ==
          3);
  }
  SUBCASE("help exits zero") {
    CHECK(run("--help").status == 0);
    CHECK(run("localize --help").status == 0);
  }
}
