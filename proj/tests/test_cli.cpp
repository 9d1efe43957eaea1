#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& stdin_file = "") {
  std::string cmd = std::string(SQUAREPACK_BIN) + " " + args + " 2>/dev/null";
  if (!stdin_file.empty()) cmd += " < " + stdin_file;
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(SQUAREPACK_TMP) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::create_directories(dir_);
  }
  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, PackThreeTrivialPlacements) {
  const auto r = run("pack " + write("seq.txt", "0.6\n0.3\n0.2\n"));
  EXPECT_EQ(r.code, 0);
  const auto recs = lines(r.out);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0]["class"], "large");
  EXPECT_EQ(recs[0]["x"], 0.4);
  EXPECT_EQ(recs[1]["x"], 0.7);
  EXPECT_EQ(recs[1]["y"], 0.0);
  EXPECT_EQ(recs[2]["shelf_id"], "b0");
  for (const auto& rec : recs) {
    for (const char* key : {"id", "height", "class", "x", "y", "shelf_id"}) EXPECT_TRUE(rec.contains(key));
  }
}

TEST_F(Cli, PackTwoLargesFails) {
  const auto r = run("pack " + write("seq.txt", "[0.51, 0.51]"));
  EXPECT_EQ(r.code, 1);
  const auto recs = lines(r.out);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1]["status"], "rejected");
  EXPECT_EQ(recs[1]["reason"], "no_fit");
}

TEST_F(Cli, VerifySvgAndLog) {
  std::string seq;
  for (int i = 0; i < 40; ++i) seq += (i % 4 == 0 ? "0.15\n" : i % 4 == 1 ? "0.06\n" : i % 4 == 2 ? "0.01\n" : "0.1\n");
  const std::string svg = (dir_ / "out.svg").string(), log = (dir_ / "events.jsonl").string();
  const auto r = run("pack --verify --svg " + svg + " --log " + log + " " + write("seq.txt", seq));
  EXPECT_EQ(r.code, 0);
  std::ifstream s(svg);
  std::string first;
  std::getline(s, first);
  EXPECT_EQ(first.rfind("<svg", 0), 0u);
  std::ifstream l(log);
  std::stringstream all;
  all << l.rdbuf();
  const auto events = lines(all.str());
  EXPECT_GE(events.size(), 40u);
  EXPECT_EQ(events[0]["seq"], 0);
}

TEST_F(Cli, EnforcedBudget) {
  const auto r = run("pack --enforce-budget --budget 0.1 " + write("seq.txt", "0.3\n0.11\n"));
  EXPECT_EQ(r.code, 1);
  const auto recs = lines(r.out);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1]["reason"], "budget_exceeded");
}

TEST_F(Cli, IoAndParseErrorsExitTwo) {
  EXPECT_EQ(run("pack " + (dir_ / "missing.txt").string()).code, 2);
  EXPECT_EQ(run("pack " + write("bad.txt", "0.3\n1e-3\n")).code, 2);
  EXPECT_EQ(run("pack " + write("neg.txt", "-0.3\n")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("fuzz --dist nonsense").code, 2);
}

TEST_F(Cli, PackIsByteIdenticalAcrossRuns) {
  std::string seq;
  for (int i = 1; i <= 300; ++i) seq += "0.0" + std::to_string(10 + (i * 37) % 40) + "\n";
  const std::string in = write("seq.txt", seq);
  const auto a = run("pack " + in), b = run("pack " + in);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST_F(Cli, FuzzHeadline) {
  for (const char* dist : {"uniform", "class_boundary"}) {
    const auto r = run(std::string("fuzz --runs 1000 --audit-all --dist ") + dist);
    EXPECT_EQ(r.code, 0) << dist;
    EXPECT_EQ(r.out.rfind("1000/1000 packed", 0), 0u) << r.out;
  }
}

TEST_F(Cli, FuzzBeyondTheGuaranteeReportsFailures) {
  const std::string args = "fuzz --runs 100 --budget 0.45 --dist medium_heavy";
  const auto strict = run(args);
  EXPECT_EQ(strict.code, 1);
  EXPECT_NE(strict.out.find("\"failing_seeds\""), std::string::npos);
  const auto lax = run(args + " --allow-failures");
  EXPECT_EQ(lax.code, 0);
  EXPECT_EQ(lax.out, strict.out);
}

TEST_F(Cli, FuzzIsIndependentOfThreadCount) {
  const auto a = run("fuzz --runs 300 --dist mixed --audit-all --threads 1");
  const auto b = run("fuzz --runs 300 --dist mixed --audit-all --threads 4");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, ServeStdio) {
  const std::string in = write("session.jsonl",
                               "{\"op\":\"place\",\"height\":0.3}\n\n"
                               "{\"op\":\"place\",\"height\":2}\n"
                               "nonsense\n"
                               "{\"op\":\"state\"}\n");
  const auto r = run("serve --stdio", in);
  EXPECT_EQ(r.code, 0);
  const auto resp = lines(r.out);
  ASSERT_EQ(resp.size(), 4u);
  EXPECT_EQ(resp[0]["status"], "placed");
  EXPECT_EQ(resp[0]["rect"], json::parse(R"({"x":0.7,"y":0.0,"w":0.3,"h":0.3})"));
  EXPECT_EQ(resp[1]["reason"], "invalid_height");
  EXPECT_EQ(resp[2]["reason"], "parse_error");
  EXPECT_EQ(resp[3]["snapshot"]["placements"].size(), 1u);
  for (std::size_t i = 0; i < resp.size(); ++i) EXPECT_EQ(resp[i]["seq"], i);
}
