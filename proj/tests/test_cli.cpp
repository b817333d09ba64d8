#include <cstdio>
#include <sstream>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "rgather/instance.hpp"
#include "rgather/io.hpp"
#include "test_util.hpp"

using namespace rgather;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(RGATHER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (size_t n = fread(buffer, 1, sizeof buffer, pipe)) result.stdout_text.append(buffer, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/rgather_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::string star_instance_file() {
  Instance inst =
      testutil::make_instance({{0, 1, 1}, {0, 2, 2}, {0, 3, 3}}, 0, {1, 2, 3}, {{0, 0}}, 3);
  return write_temp("star.json", serialize_instance(inst));
}

}  // namespace

TEST_CASE("solve-minmax reports cost 3 and exits 0") {
  std::string path = star_instance_file();
  RunResult run = run_cli("solve-minmax --epsilon 1 " + path);
  CHECK(run.exit_code == 0);
  CHECK(run.stdout_text.find("\"cost\":\"3\"") != std::string::npos);
  CHECK(run.stdout_text.find("\"verdict\":\"ok\"") != std::string::npos);
}

TEST_CASE("solver subcommands agree with each other on the star") {
  std::string path = star_instance_file();
  CHECK(run_cli("solve-minsum " + path).stdout_text.find("\"minsum_cost\":\"6\"") !=
        std::string::npos);
  CHECK(run_cli("solve-lbfl " + path).exit_code == 0);
  CHECK(run_cli("solve-proximity --objective minmax " + path).exit_code == 0);
  CHECK(run_cli("brute --variant minmax " + path).stdout_text.find("\"cost\":\"3\"") !=
        std::string::npos);
}

TEST_CASE("check accepts solver output and rejects a tampered copy") {
  std::string path = star_instance_file();
  std::string sol_path = "/tmp/rgather_test_sol.json";
  RunResult solved = run_cli("solve-minmax --epsilon 1 --solution-out " + sol_path + " " + path);
  REQUIRE(solved.exit_code == 0);

  RunResult good = run_cli("check --solution " + sol_path + " " + path);
  CHECK(good.exit_code == 0);
  CHECK(good.stdout_text.find("\"verdict\":\"ok\"") != std::string::npos);

  // Move one user to a closed facility id.
  Solution sol = parse_solution_file(sol_path);
  sol.assignment[0] = 7;
  std::string tampered = write_temp("tampered.json", serialize_solution(sol));
  RunResult bad = run_cli("check --solution " + tampered + " " + path);
  CHECK(bad.exit_code == 2);
  CHECK(bad.stdout_text.find("violations") != std::string::npos);
}

TEST_CASE("infeasible instances exit 1") {
  Instance starved = testutil::make_instance({{0, 1, 1}}, 0, {1}, {{0, 0}}, 2);
  std::string path = write_temp("starved.json", serialize_instance(starved));
  CHECK(run_cli("solve-minmax " + path).exit_code == 1);
  CHECK(run_cli("solve-minsum " + path).exit_code == 1);
  RunResult prox = run_cli("solve-proximity " + path);
  CHECK(prox.exit_code == 1);
  CHECK(prox.stdout_text.find("\"verdict\":\"infeasible\"") != std::string::npos);
}

TEST_CASE("usage and parse problems exit 3") {
  CHECK(run_cli("solve-minmax /tmp/rgather_no_such_file.json").exit_code == 3);
  std::string bad = write_temp("bad.json", "{ not json");
  CHECK(run_cli("solve-minmax " + bad).exit_code == 3);
  CHECK(run_cli("definitely-not-a-subcommand").exit_code != 0);
  std::string path = star_instance_file();
  CHECK(run_cli("solve-capped " + path).exit_code == 3);  // no --k, no variant block
}

TEST_CASE("gen is deterministic and its output solves") {
  RunResult a = run_cli("gen --seed 5 --vertices 9 --users 4 --facilities 2 --r 2 --max-len 9");
  RunResult b = run_cli("gen --seed 5 --vertices 9 --users 4 --facilities 2 --r 2 --max-len 9");
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  std::string path = write_temp("gen.json", a.stdout_text);
  RunResult solved = run_cli("solve-minmax --epsilon 1/2 " + path);
  CHECK(solved.exit_code == 0);
  CHECK(solved.stdout_text.find("\"verdict\":\"ok\"") != std::string::npos);

  RunResult shaped = run_cli("gen --seed 5 --vertices 6 --users 2 --facilities 1 --shape path");
  InstanceFile parsed = parse_instance_text(shaped.stdout_text);
  for (VertexId v = 1; v < parsed.instance.tree().vertex_count(); ++v) {
    CHECK(parsed.instance.tree().parent(v) == v - 1);
  }
}

TEST_CASE("identical inputs produce identical reports modulo wall time") {
  std::string path = star_instance_file();
  auto strip_wall = [](std::string text) {
    size_t pos = text.find("\"wall_ms\"");
    REQUIRE(pos != std::string::npos);
    size_t end = text.find_first_of(",}", pos);
    return text.erase(pos, end - pos);
  };
  RunResult a = run_cli("solve-minmax --epsilon 1/2 " + path);
  RunResult b = run_cli("solve-minmax --epsilon 1/2 " + path);
  CHECK(strip_wall(a.stdout_text) == strip_wall(b.stdout_text));

  std::string s1 = "/tmp/rgather_test_det1.json", s2 = "/tmp/rgather_test_det2.json";
  run_cli("solve-minsum --solution-out " + s1 + " " + path);
  run_cli("solve-minsum --solution-out " + s2 + " " + path);
  std::ifstream f1(s1), f2(s2);
  std::stringstream b1, b2;
  b1 << f1.rdbuf();
  b2 << f2.rdbuf();
  CHECK(b1.str() == b2.str());
}

TEST_CASE("variant block drives solve-outliers and solve-capped defaults") {
  Instance inst = testutil::make_instance({{0, 1, 1}, {0, 2, 1}, {0, 3, 100}}, 0, {1, 2, 3},
                                          {{0, 0}}, 2);
  std::string path =
      write_temp("variant.json", serialize_instance(inst, Rational(1, 3), 1));
  RunResult out = run_cli("solve-outliers " + path);
  CHECK(out.exit_code == 0);
  CHECK(out.stdout_text.find("alpha=1/3") != std::string::npos);
  CHECK(out.stdout_text.find("\"cost\":\"1\"") != std::string::npos);
  RunResult cap = run_cli("solve-capped " + path);
  CHECK(cap.exit_code == 0);
  CHECK(cap.stdout_text.find("k=1") != std::string::npos);
}
