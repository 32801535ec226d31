#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "ppac/circuit.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(PPAC_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, p)) r.out.append(buf, got);
  int status = pclose(p);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

// Fixture files shared by the test cases, written once per process.
const std::string& fixture_dir() {
  static std::string dir = [] {
    std::string d =
        (std::filesystem::temp_directory_path() / "ppac_cli_fixtures").string();
    std::filesystem::create_directories(d);
    RunResult r = run("fixtures -o " + d);
    REQUIRE(r.exit_code == 0);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("cli: eval, cdeg, mdeg") {
  const std::string& d = fixture_dir();
  CHECK(run("eval " + d + "/two_clause.ckt 1100").out == "0\n");
  CHECK(run("cdeg " + d + "/two_clause.ckt").out == "2\n");
  CHECK(run("mdeg " + d + "/two_clause.ckt").out == "2\n");
  CHECK(run("mdeg " + d + "/l100.ckt").out == "3\n");
}

TEST_CASE("cli: formal and enumerate agree with the library") {
  const std::string& d = fixture_dir();
  CHECK(run("formal " + d + "/two_clause.ckt").out ==
        "x1*x2 + x1*x3 + x1*x4 + x2*x4 + x2^2 + x3*x4 + x3^2\n");
  RunResult en = run("--json enumerate --maximal " + d + "/l100.ckt");
  CHECK(en.exit_code == 0);
  json j = json::parse(en.out);
  CHECK(j["count"] == 1);
  CHECK(j["subcircuits"][0]["marking"] == "nx2=l,nx3=l");
  CHECK(j["subcircuits"][0]["monomial"] == "x1*x2*x3");
}

TEST_CASE("cli: check-prop1 reports counts") {
  const std::string& d = fixture_dir();
  RunResult r = run("check-prop1 " + d + "/two_clause.ckt");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "ok — 7 subcircuits, 7 surviving monomials\n");
}

TEST_CASE("cli: reduce leaf + verify flows on the path fixture") {
  const std::string& d = fixture_dir();
  RunResult vh = run("--json verify-hardness " + d + "/path.leaf");
  CHECK(vh.exit_code == 0);
  CHECK(json::parse(vh.out)["ok"] == true);

  RunResult ls = run("leaf solve " + d + "/path.leaf");
  CHECK(ls.exit_code == 0);
  CHECK(ls.out == "10\n");
}

TEST_CASE("cli: verify-matching on the circuit-backed bitflip fixture") {
  const std::string& d = fixture_dir();
  RunResult r = run("--json verify-matching " + d + "/bitflip3_d.ckt " + d +
                    "/bitflip3_f.ckt --cap 200000");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["maximal"] == 48);
}

TEST_CASE("cli: solve-cnss walks to the other leaf") {
  const std::string& d = fixture_dir();
  // Build D and F of the path instance via reduce leaf.
  RunResult rd = run("reduce leaf " + d + "/path.leaf -o " + d + "/path");
  CHECK(rd.exit_code == 0);
  RunResult r = run("--json reduce chevalley-to-cnss " + d + "/path_d.ckt " +
                    d + "/path_f.ckt --tail " + d + "/path_tail.ckt --zero 00");
  CHECK(r.exit_code == 0);
  RunResult sc = run("solve-cnss " + d + "/path_d.ckt " + d +
                     "/path_f.ckt --point 00");
  CHECK(sc.exit_code == 0);
  CHECK(sc.out == "10\n");
}

TEST_CASE("cli: reduce 3sat emits the image circuit") {
  const std::string& d = fixture_dir();
  RunResult r = run("--json reduce 3sat " + d + "/sample.cnf");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  std::string text = j["circuit"];
  ppac::Circuit img = ppac::parse_circuit_text(text);
  CHECK(img.gates.size() == 13);
}

TEST_CASE("cli: exit codes distinguish bad input, caps and violations") {
  const std::string& d = fixture_dir();
  CHECK(run("eval " + d + "/nonexistent.ckt 00").exit_code == 1);
  CHECK(run("enumerate " + d + "/two_clause.ckt --cap 3").exit_code == 2);
  CHECK(run("eval " + d + "/two_clause.ckt 11").exit_code == 1);  // bad width
}
