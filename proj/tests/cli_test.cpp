// end to end checks of the command line binary; path injected by the build
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + std::string(BELLFORGE_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("build emits the expression json") {
  CHECK(run_cli("build --family mabk --n 3 --out cli_build.json") == 0);
  auto j = nlohmann::json::parse(slurp("cli_build.json"));
  CHECK(j["n"] == 3);
  CHECK(j["coefficients"].at("001") == "1/2");
  CHECK(j["coefficients"].at("111") == "-1/2");
  std::remove("cli_build.json");
}

TEST_CASE("value fast hits the five party plateau") {
  CHECK(run_cli("value --family mabk --n 5 --method fast --out cli_value5.json") == 0);
  auto j = nlohmann::json::parse(slurp("cli_value5.json"));
  CHECK(std::abs(j["fast"]["value"].get<double>() - 4.0) < 1e-9);
  std::remove("cli_value5.json");
}

TEST_CASE("bounds reports the exact local bound and reference constants") {
  CHECK(run_cli("bounds --family mabk --n 3 --out cli_bounds.json") == 0);
  auto j = nlohmann::json::parse(slurp("cli_bounds.json"));
  CHECK(j["local"] == "1/1");
  CHECK(j["biseparable"] == "sqrt(2)");
  CHECK(j["quantum"] == "2/1");
  std::remove("cli_bounds.json");
}

TEST_CASE("wwzb table drives the whole pipeline") {
  CHECK(run_cli("value --family wwzb --table 00010111 --method fast --out cli_w.json") == 0);
  auto j = nlohmann::json::parse(slurp("cli_w.json"));
  CHECK(j["n"] == 3);
  CHECK(std::abs(j["fast"]["value"].get<double>() - 2.0) < 1e-9);
  std::remove("cli_w.json");
}

TEST_CASE("classify defaults to the tripartite csv") {
  CHECK(run_cli("classify --out cli_classify.csv") == 0);
  const std::string csv = slurp("cli_classify.csv");
  CHECK(csv.rfind("label,orbit_size,local_bound", 0) == 0);
  CHECK(csv.find("mermin,16,1/1,2,2,") != std::string::npos);
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 6);
  std::remove("cli_classify.csv");
}

TEST_CASE("selftest emits a verdict") {
  CHECK(run_cli("selftest --family mabk --n 2 --out cli_self.json") == 0);
  auto j = nlohmann::json::parse(slurp("cli_self.json"));
  CHECK(j["verdict"] == "full-selftest");
  std::remove("cli_self.json");
}

TEST_CASE("identical configs give byte identical output") {
  CHECK(run_cli("value --family mabk --n 4 --method oracle --seed 11 --out cli_a.json") == 0);
  CHECK(run_cli("value --family mabk --n 4 --method oracle --seed 11 --out cli_b.json") == 0);
  CHECK(slurp("cli_a.json") == slurp("cli_b.json"));
  CHECK(run_cli("value --family mabk --n 4 --method oracle --seed 11 --out cli_c.json",
                "BELLFORGE_THREADS=3 ") == 0);
  CHECK(slurp("cli_a.json") == slurp("cli_c.json"));
  std::remove("cli_a.json");
  std::remove("cli_b.json");
  std::remove("cli_c.json");
}

TEST_CASE("argument errors exit with code two") {
  CHECK(run_cli("bounds --family nope --n 3 2>/dev/null") == 2);
  CHECK(run_cli("value --family mabk 2>/dev/null") == 2);
  CHECK(run_cli("bounds --family mabk --n 9 2>/dev/null") == 2);
  CHECK(run_cli("build --family mabk --n 3 --format csv 2>/dev/null") == 2);
  CHECK(run_cli("selftest --family uffink-m --n 3 2>/dev/null") == 2);
  CHECK(run_cli("2>/dev/null") == 2);
  CHECK(run_cli("--help >/dev/null") == 0);
}
