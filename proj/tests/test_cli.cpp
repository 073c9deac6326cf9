// Drives the ctxtree binary end to end through the shell.

#include <doctest.h>

#include "test_util.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#ifndef CTXTREE_CLI
#error "CTXTREE_CLI must name the command-line binary"
#endif

namespace {

using testutil::TempDir;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

Run cli(const TempDir& dir, const std::string& args, const std::string& env = "") {
  const std::string out = dir.file("_stdout"), err = dir.file("_stderr");
  const std::string cmd =
      "cd '" + dir.path.string() + "' && " + env + " '" CTXTREE_CLI "' " + args + " >'" + out + "' 2>'" + err + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

void toy_files(const TempDir& dir) {
  spit(dir.file("y.txt"), "ABACDCBEDEDE\n");
  spit(dir.file("x.txt"), "AABDADAD\n");
  spit(dir.file("f.txt"), "A\nBA\nC\nCD\n");
}

}  // namespace

TEST_CASE("score reproduces the worked toy value") {
  TempDir dir;
  toy_files(dir);
  auto r = cli(dir, "score x.txt --features f.txt --training y.txt --threshold -1/20");
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].contains("config"));
  CHECK(lines[1]["exact"]["D"] == "-1/10");
  CHECK(lines[1]["exact"]["L_Y"] == "7/5");
  CHECK(lines[1]["decision"] == "not-acceptable");
}

TEST_CASE("filter at T = 0 rejects the toy test") {
  TempDir dir;
  toy_files(dir);
  auto r = cli(dir, "filter x.txt --features f.txt --training y.txt --threshold 0 --accepted-out acc.fa");
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1]["decision"] == "not-acceptable");
  CHECK(slurp(dir.file("acc.fa")).empty());
}

TEST_CASE("sort ranks the training sequence above the toy test") {
  TempDir dir;
  toy_files(dir);
  auto r = cli(dir, "sort x.txt y.txt --features f.txt --training y.txt");
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1]["rank"] == 1);
  CHECK(lines[1]["input_index"] == 1);
  CHECK(lines[2]["input_index"] == 0);
}

TEST_CASE("exit codes") {
  TempDir dir;
  toy_files(dir);
  SUBCASE("missing input is an I/O failure and writes nothing") {
    auto r = cli(dir, "build nope.txt -o out.ctxidx");
    CHECK(r.code == 2);
    CHECK(!std::filesystem::exists(dir.file("out.ctxidx")));
  }
  SUBCASE("lmax 0 is a usage error") { CHECK(cli(dir, "build y.txt --lmax 0").code == 1); }
  SUBCASE("unknown flag is a usage error") { CHECK(cli(dir, "build y.txt --bogus").code == 1); }
  SUBCASE("a malformed tree file is a data failure") {
    spit(dir.file("bad.tree"), "#ctxtree-tree 1\ngarbage\n");
    CHECK(cli(dir, "score x.txt --tree bad.tree").code == 3);
  }
}

TEST_CASE("gen is deterministic per seed") {
  TempDir dir;
  const std::string args = "gen --length 5000 --feature-count 3 --density 0.2 --background mixing --seed 5 -o ";
  REQUIRE(cli(dir, args + "a").code == 0);
  REQUIRE(cli(dir, args + "b").code == 0);
  CHECK(slurp(dir.file("a.fa")) == slurp(dir.file("b.fa")));
  CHECK(slurp(dir.file("a.features")) == slurp(dir.file("b.features")));
  CHECK(cli(dir, "gen --length 5000 --feature-count 3 --density 0.2 --seed 6 -o c").code == 0);
  CHECK(slurp(dir.file("a.fa")) != slurp(dir.file("c.fa")));
}

TEST_CASE("eval with a no-op compaction passes with zero error") {
  TempDir dir;
  REQUIRE(cli(dir, "gen --length 3000 --feature-count 3 --density 0.2 --seed 2 -o g").code == 0);
  auto r = cli(dir, "eval --training g.fa --lmax 8 --epsilon 1/1000 --bigN 50 --features-budget 4 --threshold -1/50");
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1]["min_count"] == 1);
  CHECK(lines[1]["p_delta"] == "0");
  CHECK(r.err.find("PASS") != std::string::npos);
}

TEST_CASE("sweep over three epsilons") {
  TempDir dir;
  REQUIRE(cli(dir, "gen --length 20000 --feature-count 4 --density 0.3 --seed 3 -o g").code == 0);
  REQUIRE(cli(dir, "build g.fa --lmax 10 -o g.ctxidx").code == 0);
  auto r = cli(dir, "sweep --index g.ctxidx --epsilons 0.01,0.05,0.1 --budgets 4 --windows 200 --thresholds -0.01");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rfind("# config=", 0) == 0);
  CHECK(rows[1].rfind("epsilon,f,N,T,leaf_count,", 0) == 0);
  auto leaves = [](const std::string& row) {
    std::istringstream s(row);
    std::string cell;
    for (int k = 0; k < 5; ++k) std::getline(s, cell, ',');
    return std::stoull(cell);
  };
  CHECK(leaves(rows[2]) >= leaves(rows[3]));
  CHECK(leaves(rows[3]) >= leaves(rows[4]));
}

TEST_CASE("relative outputs land in the output directory from the environment") {
  TempDir dir;
  toy_files(dir);
  std::filesystem::create_directories(dir.path / "outdir");
  auto r = cli(dir, "build y.txt -o y.ctxidx", std::string("CTXTREE_OUTPUT_DIR=") + dir.file("outdir"));
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(dir.path / "outdir" / "y.ctxidx"));
  CHECK(!std::filesystem::exists(dir.path / "y.ctxidx"));
}

TEST_CASE("a threshold above one warns and leaves an empty tree") {
  TempDir dir;
  toy_files(dir);
  REQUIRE(cli(dir, "build y.txt -o y.ctxidx").code == 0);
  auto r = cli(dir, "compact y.ctxidx --epsilon 2 --bigN 1 --features-budget 1 -o y.tree");
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  auto summary = json_lines(r.out);
  REQUIRE(!summary.empty());
  CHECK(summary.back()["leaf_count"] == 0);
}
