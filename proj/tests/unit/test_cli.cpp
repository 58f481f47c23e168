#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using mumall::testing::fixture_path;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string out = std::string(MUMALL_SCRATCH) + "/cli_out.txt";
  const std::string cmd = std::string(MUMALL_CLI) + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(status), ss.str()};
}

std::string scratch(const std::string& name) { return std::string(MUMALL_SCRATCH) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check") {
    for (const auto& name : mumall::testing::all_fixtures()) CHECK(run("check " + fixture_path(name)).code == 0);
    nlohmann::json j = mumall::save_proof(mumall::testing::fixture("zip"));
    j["nodes"]["l1"]["premises"] = {"k0"};
    std::ofstream(scratch("corrupt.json")) << j.dump();
    const Result r = run("check " + scratch("corrupt.json"));
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["defects"] == 1);
    CHECK(run("check " + scratch("missing.json")).code == 1);
  }

  TEST_CASE("progress") {
    Result r = run("progress " + fixture_path("fig_centre_nu"));
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["progressing"] == true);
    r = run("progress --oracle " + fixture_path("fig_left"));
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["progressing"] == false);
    CHECK(j["counterexample"]["loop"] == nlohmann::json::array({"k"}));
    CHECK(j["oracle"]["progressing"] == false);
  }

  TEST_CASE("id") {
    CHECK(run("id --formula \"mu X. X\" -o " + scratch("id.json")).code == 0);
    CHECK(mumall::load_proof_file(scratch("id.json")).size() == 2);
    CHECK(run("check " + scratch("id.json")).code == 0);
    CHECK(run("progress --oracle " + scratch("id.json")).code == 0);
    CHECK(run("--format dot id --formula 1").out.find("digraph") == 0);
    CHECK(run("id --formula \"X * 1\"").code == 1);
  }

  TEST_CASE("normalize") {
    Result r = run("normalize " + fixture_path("zip") + " --depth 8 --emit " + scratch("prefix.json") + " --events " +
                   scratch("events.jsonl"));
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["cutFree"] == true);
    CHECK(run("check " + scratch("prefix.json")).code == 0);
    std::ifstream ev(scratch("events.jsonl"));
    std::string first;
    std::getline(ev, first);
    CHECK(nlohmann::json::parse(first)["kind"] == "expand");

    r = run("normalize " + fixture_path("fig_left") + " --budget 300");
    CHECK(r.code == 3);
    CHECK(nlohmann::json::parse(r.out)["depthLog"].size() == 300);

    CHECK(run("normalize " + fixture_path("zip") + " --budget 5 --checkpoint " + scratch("ck.json")).code == 3);
    r = run("normalize --resume " + scratch("ck.json") + " --depth 8");
    CHECK(r.code == 0);
    CHECK(run("normalize " + fixture_path("zip") + " --policy sideways").code != 0);
  }

  TEST_CASE("ic-verify") {
    Result r = run("ic-verify " + fixture_path("ic_case1") + " --subgraph r,l,k");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["result"] == "no violation up to bound");
    r = run("ic-verify " + fixture_path("ic_case1") + " --subgraph r,l");
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["violations"].size() == 1);
    r = run("ic-verify " + fixture_path("section3") + " --external");
    CHECK(nlohmann::json::parse(r.out)["external"]["ok"] == true);
  }

  TEST_CASE("covering") {
    const Result r = run("covering " + fixture_path("ic_case4") + " --path first --path last --path alternate");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["branches"] != j[1]["branches"]);
    CHECK(j[1]["branches"] != j[2]["branches"]);
    CHECK(j[0]["branches"] != j[2]["branches"]);
    CHECK(j[2]["branches"].size() == 2);
  }

  TEST_CASE("gen is seeded") {
    CHECK(run("--seed 5 gen").out == run("--seed 5 gen").out);
    CHECK(run("--seed 5 gen").out != run("--seed 6 gen").out);
    CHECK(run("--seed 5 gen -o " + scratch("gen.json")).code == 0);
    CHECK(run("progress --oracle " + scratch("gen.json")).code != 2);
  }
}
