#include "cli.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"qwalk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return qwalk::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("line subcommand emits a parity-pruned csv distribution") {
  const std::string path = "/tmp/qwalk_cli_line.csv";
  CHECK(run_cli({"line", "--steps", "100", "--coin", "hadamard", "--init",
                 "1,0", "--format", "csv", "--out", path}) == 0);
  const std::string text = slurp(path);
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  CHECK(header == "position,probability");
  std::string row;
  int rows = 0;
  double total = 0.0;
  while (std::getline(in, row)) {
    const auto comma = row.find(',');
    REQUIRE(comma != std::string::npos);
    const long long position = std::stoll(row.substr(0, comma));
    CHECK(position % 2 == 0);  // odd positions carry no probability at t=100
    total += std::stod(row.substr(comma + 1));
    ++rows;
  }
  CHECK(rows == 101);
  CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("identical argv and seed give byte-identical output") {
  const std::string a = "/tmp/qwalk_cli_det_a.csv";
  const std::string b = "/tmp/qwalk_cli_det_b.csv";
  const std::vector<std::string> args{
      "--seed", "9",       "decohere",      "--steps", "40",
      "--trials", "200",   "--coin-measure-p", "0.3", "--format", "csv"};
  auto with_out = [&](const std::string& path) {
    auto copy = args;
    copy.push_back("--out");
    copy.push_back(path);
    return copy;
  };
  CHECK(run_cli(with_out(a)) == 0);
  CHECK(run_cli(with_out(b)) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("json output carries a schema version and a config echo") {
  const std::string path = "/tmp/qwalk_cli_line.json";
  CHECK(run_cli({"--seed", "3", "line", "--steps", "8", "--format", "json",
                 "--out", path}) == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["schema_version"] == 1);
  CHECK(j["config"]["subcommand"] == "line");
  CHECK(j["config"]["steps"] == "8");
  CHECK(j["config"]["seed"] == "3");
  CHECK(j["table"]["columns"][0] == "position");
}

TEST_CASE("oracle konno reports an l1 distance") {
  const std::string path = "/tmp/qwalk_cli_oracle.csv";
  CHECK(run_cli({"oracle", "--check", "konno", "--t", "400", "--out", path}) ==
        0);
  const std::string text = slurp(path);
  CHECK(text.find("l1_distance=") != std::string::npos);
  CHECK(text.find("density_integral=") != std::string::npos);
}

TEST_CASE("gate phase reports the matched symbolic phases") {
  const std::string path = "/tmp/qwalk_cli_gate.csv";
  CHECK(run_cli({"gate", "--name", "phase", "--alpha", "1", "--beta", "0",
                 "--out", path}) == 0);
  const std::string text = slurp(path);
  CHECK(text.find("phase0=e^{-5i*pi/4}") != std::string::npos);
  CHECK(text.find("phase0_match=true") != std::string::npos);
  CHECK(text.find("phase1_match=true") != std::string::npos);
}

TEST_CASE("absorbing run emits a trajectory table") {
  const std::string path = "/tmp/qwalk_cli_absorb.csv";
  CHECK(run_cli({"line", "--barrier", "0", "--start", "1", "--barrier-steps",
                 "500", "--out", path}) == 0);
  const std::string text = slurp(path);
  CHECK(text.find("absorbed_left=") != std::string::npos);
  CHECK(text.find("step,left,right,survivor_bound") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2, numeric errors with 1") {
  CHECK(run_cli({"line", "--no-such-flag"}) == 2);
  CHECK(run_cli({}) == 2);
  // global flags are accepted after the subcommand name as well
  CHECK(run_cli({"decohere", "--seed", "4", "--steps", "5", "--trials", "3",
                 "--out", "/tmp/qwalk_cli_fallthrough.csv"}) == 0);
  // bad init norm is a run error, not a usage error
  CHECK(run_cli({"line", "--steps", "4", "--init", "1,1"}) == 1);
  // singular scattering momentum
  const std::string graph = "/tmp/qwalk_cli_diamond.txt";
  {
    std::ofstream g(graph);
    g << "# diamond\n0 1\n0 2\n1 3\n2 3\n";
  }
  CHECK(run_cli({"scatter", "--graph", graph, "--leads", "0,3", "--k",
                 "-1.5707963267948966"}) == 1);
  CHECK(run_cli({"scatter", "--graph", graph, "--leads", "0,3", "--k", "-0.7",
                 "--out", "/tmp/qwalk_cli_scatter.csv"}) == 0);
  const std::string text = slurp("/tmp/qwalk_cli_scatter.csv");
  CHECK(text.find("flux_0=1") != std::string::npos);
}

TEST_CASE("szegedy audit prints quantization error bounds") {
  const std::string path = "/tmp/qwalk_cli_szegedy.csv";
  CHECK(run_cli({"szegedy", "--cycle", "8", "--audit", "--out", path}) == 0);
  const std::string text = slurp(path);
  CHECK(text.find("unitarity_error=") != std::string::npos);

  // matrix-file ingestion with the size-header text format
  const std::string matrix = "/tmp/qwalk_cli_chain.txt";
  {
    std::ofstream m(matrix);
    m << "2\n0.5 0.5\n0.25 0.75\n";
  }
  const std::string path2 = "/tmp/qwalk_cli_szegedy2.csv";
  CHECK(run_cli({"szegedy", "--matrix", matrix, "--marked", "1", "--max-steps",
                 "10", "--out", path2}) == 0);
  CHECK(slurp(path2).find("first_crossing=") != std::string::npos);
}

TEST_CASE("multi-coin line walk runs under a schedule") {
  const std::string path = "/tmp/qwalk_cli_multicoin.csv";
  CHECK(run_cli({"line", "--steps", "20", "--coins",
                 "hadamard;su2:0.8,0.2,0.9", "--schedule", "fibonacci",
                 "--out", path}) == 0);
  const std::string text = slurp(path);
  CHECK(text.find("position,probability") != std::string::npos);
}

TEST_CASE("QWALK_OUT_DIR prefixes relative output paths") {
  ::setenv("QWALK_OUT_DIR", "/tmp", 1);
  CHECK(run_cli({"line", "--steps", "4", "--out", "qwalk_cli_envdir.csv"}) == 0);
  ::unsetenv("QWALK_OUT_DIR");
  CHECK(slurp("/tmp/qwalk_cli_envdir.csv").find("position,probability") !=
        std::string::npos);
}

TEST_CASE("gluedtrees reports the traversal comparison") {
  const std::string path = "/tmp/qwalk_cli_glued.csv";
  CHECK(run_cli({"gluedtrees", "--depth", "3", "--out", path}) == 0);
  const std::string text = slurp(path);
  CHECK(text.find("quantum_max_exit_probability=") != std::string::npos);
  CHECK(text.find("quantum_classical_ratio=") != std::string::npos);
}

TEST_SUITE_END();
