#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "specmix/json_io.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(SPECMIX_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) {
    output.append(buf, got);
  }
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/specmix_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  REQUIRE(f.good());
  f << text;
}

}  // namespace

TEST_CASE("cli tau prints the K_2 closed form") {
  std::string path = temp_path("k2.json");
  write_file(path, R"({"num_vertices": 2, "edges": [[0, 1, 1.0]]})");
  RunResult r = run_cli("tau --input " + path + " --epsilon 0.5");
  CHECK(r.exit_code == 0);
  // ln 2 / 2 with 12 significant digits (%g drops the trailing zero).
  CHECK(r.output.substr(0, 13) == "0.34657359028");
}

TEST_CASE("cli reports disconnected inputs on stderr with exit 2") {
  std::string path = temp_path("disc.json");
  write_file(path,
             R"({"num_vertices": 4, "edges": [[0, 1, 1.0], [2, 3, 1.0]]})");
  RunResult r = run_cli("tau --input " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("Disconnected") != std::string::npos);
}

TEST_CASE("cli rejects malformed inputs with exit 2") {
  std::string path = temp_path("bad.json");
  write_file(path, R"({"num_vertices": 2, "edges": [[1, 0, 1.0]]})");
  RunResult r = run_cli("rho --input " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("BadInputFile") != std::string::npos);

  RunResult unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("cli construct emits the standard graph format") {
  std::string out = temp_path("g3.json");
  RunResult r = run_cli("construct --k 3 --out " + out);
  CHECK(r.exit_code == 0);
  specmix::WeightedGraph g = specmix::load_graph(out);
  CHECK(g.num_vertices() == 512);
  CHECK(g.vertex_weight(17) == 2.375);
}

TEST_CASE("cli reports are byte-identical across reruns") {
  std::string path = temp_path("k3.json");
  write_file(path,
             R"({"num_vertices": 3, "edges": [[0, 1, 1.0], [0, 2, 1.0], [1, 2, 1.0]]})");
  std::string out1 = temp_path("profile1.json");
  std::string out2 = temp_path("profile2.json");
  CHECK(run_cli("profile --input " + path + " --out " + out1).exit_code == 0);
  CHECK(run_cli("profile --input " + path + " --out " + out2).exit_code == 0);
  std::ifstream f1(out1), f2(out2);
  std::string s1((std::istreambuf_iterator<char>(f1)),
                 std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)),
                 std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  CHECK(!s1.empty());
}

TEST_CASE("cli simulate echoes the seed and is reproducible") {
  RunResult a = run_cli("simulate --k 3 --start 2 --steps 16 --seed 5 --replicas 5000");
  RunResult b = run_cli("simulate --k 3 --start 2 --steps 16 --seed 5 --replicas 5000");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"seed\": 5") != std::string::npos);
}

TEST_CASE("cli rough-iso") {
  std::string p5 = temp_path("p5.json");
  write_file(
      p5,
      R"({"num_vertices": 5, "edges": [[0,1,1.0],[1,2,1.0],[2,3,1.0],[3,4,1.0]]})");
  std::string point = temp_path("k1.json");
  write_file(point, R"({"num_vertices": 1, "edges": [[0, 0, 1.0]]})");
  std::string map = temp_path("map.json");
  write_file(map, "[0, 0, 0, 0, 0]");

  RunResult ok = run_cli("rough-iso --input " + p5 + " --target " + point +
                         " --map " + map + " --K 2");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"holds\": true") != std::string::npos);

  RunResult bad = run_cli("rough-iso --input " + p5 + " --target " + point +
                          " --map " + map + " --K 1");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("\"holds\": false") != std::string::npos);
}
