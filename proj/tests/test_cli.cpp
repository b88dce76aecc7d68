#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/dsl.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QCORR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("parse_angle") {
  CHECK(parse_angle("asin(sqrt(27/32))") == doctest::Approx(std::asin(std::sqrt(27.0 / 32.0))));
  CHECK(parse_angle("acos(sqrt(9/10))") == doctest::Approx(std::acos(std::sqrt(0.9))));
  CHECK(parse_angle("pi") == doctest::Approx(M_PI));
  CHECK(parse_angle("pi/4") == doctest::Approx(M_PI / 4));
  CHECK(parse_angle("2*pi/3") == doctest::Approx(2 * M_PI / 3));
  CHECK(parse_angle("0.25") == doctest::Approx(0.25));
  CHECK(parse_angle("3/4") == doctest::Approx(0.75));
  CHECK_THROWS_AS(parse_angle("asin(sqrt(3/2))"), DslError);
  CHECK_THROWS_AS(parse_angle("nonsense"), DslError);
  CHECK_THROWS_AS(parse_angle(""), DslError);
}

TEST_CASE("build_state families") {
  StateSpecDsl spec;
  spec.family = "ghz";
  spec.n = 3;
  spec.i = 0;
  CHECK(std::abs(overlap(build_state(spec), ghz_canonical(3, 0, +1)) - 1.0) < 1e-12);

  spec.family = "ghz-sup";
  spec.j = 3;
  spec.alpha = 0.7;
  CHECK(build_state(spec).num_qubits() == 3);

  spec.family = "w";
  CHECK(std::abs(overlap(build_state(spec), w_state(3)) - 1.0) < 1e-12);

  spec.family = "dicke";
  spec.n = 4;
  spec.k = 2;
  CHECK(std::abs(overlap(build_state(spec), dicke(4, 2)) - 1.0) < 1e-12);

  // two-block: --m and --n are the block sizes.
  spec.family = "two-block";
  spec.m = 2;
  spec.n = 3;
  spec.alpha = 0.4;
  spec.gamma = 0.0;
  CHECK(build_state(spec).num_qubits() == 5);

  spec.family = "custom";
  spec.amplitudes_file = "";
  CHECK_THROWS_AS(build_state(spec), DslError);
  spec.family = "no-such-family";
  CHECK_THROWS_AS(build_state(spec), DslError);
}

TEST_CASE("amplitude and density files") {
  const std::string amps_path = "/tmp/qcorr_test_amps.txt";
  {
    std::ofstream out(amps_path);
    out << "# W state, unnormalized\n";
    out << "1 1 0\n2 1 0\n4 1 0\n";
  }
  const PureState loaded = load_amplitudes(amps_path, 3);
  CHECK(std::abs(overlap(loaded, w_state(3)) - 1.0) < 1e-12);
  CHECK_THROWS_AS(load_amplitudes("/tmp/qcorr_missing_file.txt", 3), DslError);

  const std::string dens_path = "/tmp/qcorr_test_density.txt";
  {
    std::ofstream out(dens_path);
    out << "2\n0.5 0\n0 0\n0 0\n0.5 0\n";
  }
  const DensityMatrix rho = load_density_file(dens_path);
  CHECK(rho.num_qubits() == 1);
  CHECK(rho.mat()(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("gme --family dicke --n 2 --k 2 --mode numeric --starts 4") == 0);
  CHECK(run_cli("gme") == 2);                                // missing required flag
  CHECK(run_cli("gme --family no-such --n 3") == 2);         // DSL error
  CHECK(run_cli("discord --family w --n 3") == 2);           // needs a mode
  CHECK(run_cli("fig1 --grid 1") == 2);
}

TEST_CASE("cli gme analytic matches the closed form") {
  const std::string out = "/tmp/qcorr_gme.json";
  const std::string cmd = std::string(QCORR_CLI_PATH) +
                          " gme --family ghz-sup --n 4 --i 0 --j 3"
                          " --alpha 'asin(sqrt(27/32))' --mode both --starts 12 > " +
                          out + " 2>/dev/null";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  CHECK(text.find("\"gme\"") != std::string::npos);
  CHECK(text.find("\"pmax_analytic\"") != std::string::npos);
  // pmax = 27/64 = 0.421875 exactly.
  CHECK(text.find("0.421875") != std::string::npos);
}

TEST_CASE("cli fig csv output") {
  const std::string fig2 = "/tmp/qcorr_fig2.csv";
  REQUIRE(run_cli("fig2 --n 4 --grid 11 --out " + fig2) == 0);
  auto lines = read_lines(fig2);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "p,S_bits");
  CHECK(std::stod(lines[1].substr(lines[1].find(',') + 1)) == doctest::Approx(2.0));
  CHECK(std::stod(lines[11].substr(lines[11].find(',') + 1)) == doctest::Approx(2.0));

  // Re-emission is byte-identical.
  const std::string fig2b = "/tmp/qcorr_fig2b.csv";
  REQUIRE(run_cli("fig2 --n 4 --grid 11 --out " + fig2b) == 0);
  CHECK(read_lines(fig2b) == lines);

  const std::string fig1 = "/tmp/qcorr_fig1.csv";
  REQUIRE(run_cli("fig1 --grid 21 --m 2 --n 2 --out " + fig1) == 0);
  lines = read_lines(fig1);
  REQUIRE(lines.size() == 22);
  CHECK(lines[0] == "s,BG,G,BE,E");
  for (std::size_t r = 1; r < lines.size(); ++r) {
    std::stringstream row(lines[r]);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 5);
    CHECK(vals[1] <= vals[2] + 1e-12);  // BG <= G
    CHECK(vals[3] <= vals[4] + 1e-12);  // BE <= E
  }
}

TEST_CASE("cli discord sweep") {
  const std::string out = "/tmp/qcorr_sweep.csv";
  REQUIRE(run_cli("discord --family w --n 3 --sweep-p 0:1:0.25 --out " + out) == 0);
  const auto lines = read_lines(out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "p,S_bits");
  CHECK(std::stod(lines[1].substr(lines[1].find(',') + 1)) ==
        doctest::Approx(std::log2(3.0)));
}
