// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SHTVOL_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(SHTVOL_DATA_DIR) + "/" + rel; }

nlohmann::json result_of(const Run& r) { return nlohmann::json::parse(r.out).at("result"); }

}  // namespace

TEST_CASE("eigenweights subcommand") {
  auto r = run("eigenweights gl:4 --mu 1,0,0,0 --eta \"x1^4\"");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("version") == "0.1.0");
  CHECK(j.at("result").at("theorem") == "nabla lambda eta");
  CHECK(j.at("result").at("eigenvalues") == nlohmann::json::array({"-1", "-1", "-1", "-1"}));
}

TEST_CASE("integrate subcommand") {
  auto r = run("integrate gl:2 --mu 1,0 --f \"x1^2\"");
  REQUIRE(r.code == 0);
  CHECK(result_of(r).at("value") == "-x1 - x2");
  CHECK(run("integrate gl:3 --mu 1,0,0 --f \"x2^3\"").code == 2);
  CHECK(run("integrate gl:2 --mu 1,0 --f \"x1^^2\"").code == 1);
}

TEST_CASE("volume jobs") {
  auto r = run("volume --job " + data("jobs/r0_sl2.json"));
  REQUIRE(r.code == 0);
  CHECK(result_of(r).at("value") == "1/3");
  CHECK(result_of(r).at("theorem") == "th:vol gen");
  auto p = run("volume --job " + data("jobs/pgl2_r2_g0.json"));
  REQUIRE(p.code == 0);
  CHECK(result_of(p).at("per_component") == "38/27");
  auto u = run("volume --job " + data("jobs/unitary_n1_r2.json"));
  REQUIRE(u.code == 0);
  CHECK(result_of(u).at("value") == "8/27");
  auto g = run("volume --job " + data("jobs/gl2_sharp_flat_g1.json"));
  REQUIRE(g.code == 0);
  CHECK(result_of(g).at("value") == result_of(g).at("split_per_component"));
}

TEST_CASE("exit codes") {
  CHECK(run("volume --job " + data("jobs/bad_curve.json")).code == 1);
  CHECK(run("volume --job " + data("jobs/nonminuscule.json")).code == 2);
  CHECK(run("volume --job " + data("jobs/does_not_exist.json")).code == 1);
  CHECK(run("phantom pgl:2 --mu 1/2,-1/2 --curve " + data("curves/malformed.json")).code == 1);
  CHECK(run("no-such-command").code == 1);
}

TEST_CASE("phantom and colmez subcommands") {
  auto r = run("phantom pgl:2 --mu 1/2,-1/2 --mu 1/2,-1/2 --curve 0");
  REQUIRE(r.code == 0);
  auto j = result_of(r);
  CHECK(j.at("dimension") == 16);
  CHECK(j.at("theorem") == "def:taut");
  auto c = run("colmez --job " + data("jobs/colmez_z2.json") + " --ring");
  REQUIRE(c.code == 0);
  auto cj = result_of(c);
  CHECK(cj.at("proposition").at("value") == cj.at("statement").at("value"));
}

TEST_CASE("approximate renderings and file output") {
  auto r = run("--approx volume --job " + data("jobs/r0_sl2.json"));
  REQUIRE(r.code == 0);
  CHECK(std::abs(result_of(r).at("value_approx").get<double>() - 1.0 / 3.0) < 1e-12);
  auto path = std::filesystem::temp_directory_path() / "shtvol_cli_test.json";
  REQUIRE(run("-o " + path.string() + " volume --job " + data("jobs/r0_sl2.json")).code == 0);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  CHECK(j.at("result").at("value") == "1/3");
  std::filesystem::remove(path);
}

TEST_CASE("output is byte-identical across runs") {
  for (const std::string& args : std::vector<std::string>{"volume --job " + data("jobs/pgl2_r2_g1.json"),
                                 "phantom pgl:2 --mu 1/2,-1/2 --mu 1/2,-1/2 --curve 1",
                                 "trace-check --job " + data("jobs/pgl2_r2_g0.json") + " --dmax 30"}) {
    auto a = run(args);
    auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
}
