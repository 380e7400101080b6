#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string bin() {
  const char* p = std::getenv("NCA_BIN");
  REQUIRE_MESSAGE(p != nullptr, "NCA_BIN must point at the CLI binary");
  return p;
}

std::string jobs() {
  const char* p = std::getenv("NCA_JOBS");
  REQUIRE_MESSAGE(p != nullptr, "NCA_JOBS must point at the job directory");
  return p;
}

struct RunOutput {
  int code = -1;
  std::string out;
};

RunOutput run(const std::string& args) {
  std::string out_path = "cli_stdout.tmp";
  std::string cmd = bin() + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  RunOutput r;
  r.code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(out_path.c_str());
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("koszul job: pass, exit 0") {
  RunOutput r = run("run " + jobs() + "/poly2_koszul.json");
  CHECK(r.code == 0);
  CHECK(r.out.find("Koszul in window (5, 8): true") != std::string::npos);
}

TEST_CASE("koszul failure reports the witness and exits 1") {
  RunOutput r = run("run " + jobs() + "/cusp_koszul.json");
  CHECK(r.code == 1);
  CHECK(r.out.find("false") != std::string::npos);
  CHECK(r.out.find("(2, 3)") != std::string::npos);
}

TEST_CASE("betti job emits the documented JSON shape") {
  RunOutput r =
      run("run " + jobs() + "/cusp_betti_k.json --json cli_betti.tmp.json");
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(slurp("cli_betti.tmp.json"));
  CHECK(j["window"] == nlohmann::json({5, 12}));
  // Generator degrees 0, 1, 3, 4, 6, 7 along the staircase.
  nlohmann::json want = nlohmann::json::array(
      {{0, 0, 1}, {1, 1, 1}, {2, 3, 1}, {3, 4, 1}, {4, 6, 1}, {5, 7, 1}});
  CHECK(j["entries"] == want);
  std::remove("cli_betti.tmp.json");
}

TEST_CASE("verification jobs pass with report JSON") {
  for (const std::string name :
       {"poly2_inequalities_modx2", "dual_inequalities_k",
        "poly2_truncate_modx2", "jordan_left_right"}) {
    CAPTURE(name);
    RunOutput r =
        run("run " + jobs() + "/" + name + ".json --json cli_rep.tmp.json");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(slurp("cli_rep.tmp.json"));
    CHECK(j["status"] == "pass");
    CHECK(j.contains("claim"));
    CHECK(j.contains("window"));
    CHECK(j.contains("details"));
    std::remove("cli_rep.tmp.json");
  }
}

TEST_CASE("usage and parse errors exit 2") {
  CHECK(run("run no_such_file.json").code == 2);
  CHECK(run("run " + jobs() + "/bad_relation.json").code == 2);
  CHECK(run("frobnicate").code == 2);
  SUBCASE("parse errors cite a position") {
    RunOutput r = run("run " + jobs() + "/bad_relation.json");
    CHECK(r.out.find("parse error") != std::string::npos);
  }
}

TEST_CASE("out-of-window requests exit 3") {
  CHECK(run("run " + jobs() + "/window_error.json").code == 3);
}

TEST_CASE("overrides rewrite job fields") {
  RunOutput r = run("run " + jobs() + "/poly2_koszul.json --override "
                    "command.h=3 --override command.D=6");
  CHECK(r.code == 0);
  CHECK(r.out.find("(3, 6)") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
  for (const std::string name :
       {"poly2_koszul", "cusp_betti_k", "poly2_inequalities_modx2",
        "poly2_truncate_modx2"}) {
    CAPTURE(name);
    RunOutput a =
        run("run " + jobs() + "/" + name + ".json --json cli_a.tmp.json");
    RunOutput b =
        run("run " + jobs() + "/" + name + ".json --json cli_b.tmp.json");
    CHECK(a.out == b.out);
    CHECK(slurp("cli_a.tmp.json") == slurp("cli_b.tmp.json"));
    std::remove("cli_a.tmp.json");
    std::remove("cli_b.tmp.json");
  }
}
