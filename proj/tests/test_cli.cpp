#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef OSLICE_CLI_PATH
#error "OSLICE_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(OSLICE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string csv_cell(const std::string& csv, int row, int col) {
  std::stringstream ss(csv);
  std::string line;
  for (int r = 0; r <= row; ++r) std::getline(ss, line);
  std::stringstream ls(line);
  std::string cell;
  for (int c = 0; c <= col; ++c) std::getline(ls, cell, ',');
  return cell;
}

}  // namespace

TEST_CASE("table subcommand emits the signed basis index CSV") {
  auto res = run_cli("table");
  CHECK(res.exit_code == 0);
  CHECK(csv_cell(res.output, 1, 2) == "+3");   // e1 e2 = e3
  CHECK(csv_cell(res.output, 2, 1) == "-3");   // e2 e1 = -e3
  CHECK(csv_cell(res.output, 1, 6) == "-7");   // e1 e6 = -e7
  CHECK(csv_cell(res.output, 0, 5) == "+5");   // 1 e5 = e5
  CHECK(csv_cell(res.output, 4, 4) == "-0");   // e4 e4 = -1
  // 8 data rows, no header
  int rows = 0;
  for (char c : res.output)
    if (c == '\n') ++rows;
  CHECK(rows == 8);
}

TEST_CASE("verify subcommand runs and reports") {
  auto res = run_cli("--json verify --suite algebra --samples 50");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"suite\":\"algebra\"") != std::string::npos);
  CHECK(res.output.find("\"all_pass\":true") != std::string::npos);

  auto bogus = run_cli("verify --suite bogus");
  CHECK(bogus.exit_code == 2);
}

TEST_CASE("cauchy subcommand emits the reconstruction JSON") {
  auto res = run_cli(
      "cauchy --p 1 --eta e2 --radius 1 --level 16 --target stem:V21 --point 0.3,0.1,0.2");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"p\":1") != std::string::npos);
  CHECK(res.output.find("\"rel_error\":") != std::string::npos);
  // small reconstruction error even at a modest level
  const auto pos = res.output.find("\"rel_error\":");
  const double rel = std::stod(res.output.substr(pos + 12));
  CHECK(rel <= 1e-7);
}

TEST_CASE("taylor subcommand emits coefficients and tails") {
  auto res = run_cli("taylor --p 0 --K 3 --target poly:x^3 --level 16 --point 0.2,0.15");
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("p") == 0);
  CHECK(j.at("K") == 3);
  CHECK(j.at("coeffs").size() == 4);
  // tails vanish for p = 0
  for (const auto& tail : j.at("tails"))
    for (const auto& comp : tail.at("value")) CHECK(std::abs(comp.get<double>()) <= 1e-9);
  CHECK(j.at("error").get<double>() <= 1e-8);
}

TEST_CASE("targets given as stem JSON round-trip through the CLI") {
  // the stem of z0 at p = 1: F1 = x0, F2 = r
  const std::string stem =
      R"('stem:{"p":1,"F1":[[[1,0,0],["1","0","0","0","0","0","0","0"]]],)"
      R"("F2":[[[0,0,1],["1","0","0","0","0","0","0","0"]]]}')";
  auto res = run_cli("cauchy --p 1 --eta e2 --level 12 --target " + stem +
                     " --point 0.2,0.1,0.3");
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("rel_error").get<double>() <= 1e-9);
  // value should be x0 + r*eta = 0.2 + 0.3 e2
  CHECK(j.at("value")[0].get<double>() == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(j.at("value")[2].get<double>() == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("byte-identical reruns with fixed flags and seed") {
  const std::string cauchy_args =
      "cauchy --p 1 --eta e2 --radius 1 --level 12 --target stem:V21 --point 0.3,0.1,0.2";
  auto a = run_cli(cauchy_args);
  auto b = run_cli(cauchy_args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  const std::string verify_args = "--json --seed 7 verify --suite slicegeom --samples 100";
  auto va = run_cli(verify_args);
  auto vb = run_cli(verify_args);
  CHECK(va.output == vb.output);

  const std::string maxmod_args = "--json --seed 9 maxmod --p 1 --target stem:V20 --samples 200";
  auto ma = run_cli(maxmod_args);
  auto mb = run_cli(maxmod_args);
  CHECK(ma.exit_code == 0);
  CHECK(ma.output == mb.output);
  CHECK(ma.output.find("\"max_on_boundary\":true") != std::string::npos);
}

TEST_CASE("--out writes the same bytes to a file") {
  const std::string path = "/tmp/oslice_cli_out_test.csv";
  std::remove(path.c_str());
  auto direct = run_cli("table");
  auto filed = run_cli("table --out " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.output.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == direct.output);
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("cauchy --p 9").exit_code == 2);
  CHECK(run_cli("cauchy --p 1 --radius -2").exit_code == 2);
  CHECK(run_cli("cauchy --p 1 --point 2.0,0,0").exit_code == 2);     // outside the ball
  CHECK(run_cli("cauchy --p 1 --point 0.1,0.2").exit_code == 2);     // wrong arity
  CHECK(run_cli("cauchy --p 1 --eta e1").exit_code == 2);            // eta not in the sphere
  CHECK(run_cli("cauchy --p 1 --target stem:{bad").exit_code == 2);  // malformed stem JSON
  CHECK(run_cli("--mode exact cauchy --p 1").exit_code == 2);
  CHECK(run_cli("taylor --p 0 --K -1").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("maxmod demo text output") {
  auto res = run_cli("maxmod --p 1 --target z0 --shells 4 --samples 300");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("maximum attained on the outermost shell") != std::string::npos);

  // constants: all shell maxima coincide
  auto cres = run_cli("--json maxmod --p 1 --target const:3/2 --shells 4 --samples 100");
  const auto j = nlohmann::json::parse(cres.output);
  for (const auto& m : j.at("shell_max")) CHECK(m.get<double>() == doctest::Approx(1.5));
  CHECK(j.at("max_on_boundary") == true);
}
