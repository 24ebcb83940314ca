// Copyright 2026 The cwl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

// Runs the CLI from the source tree with stderr folded into stdout.
Outcome RunCli(const std::string& args) {
  std::string cmd = std::string("cd '") + CWL_SOURCE_DIR + "' && '" + CWL_CLI +
                    "' " + args + " 2>&1";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::string OutDir(const std::string& name) {
  std::string dir = testing::TempDir() + "cli_" + name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::string>> ReadCsv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(path);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> row;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) row.push_back(f);
    rows.push_back(row);
  }
  return rows;
}

TEST(CliTest, DensityExample) {
  std::string dir = OutDir("density");
  Outcome o = RunCli("density --b 2 --gamma 1 --n 2 --out-dir " + dir);
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_EQ(o.out, "0.75\n");
  Outcome table = RunCli("density --b 2 --gamma 1 --d-max 10 --out-dir " + dir);
  EXPECT_EQ(table.status, 0);
  EXPECT_NE(table.out.find("limits: even 0.6666666667, odd 0.3333333333"),
            std::string::npos);
  EXPECT_EQ(ReadCsv(dir + "/density.csv").size(), 12u);
  EXPECT_TRUE(std::filesystem::exists(dir + "/density.manifest"));
}

TEST(CliTest, TheoremBound) {
  std::string dir = OutDir("theorem");
  Outcome o = RunCli("theorem --N 1000 --out-dir " + dir);
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_NE(o.out.find("8507.8"), std::string::npos) << o.out;
  auto rows = ReadCsv(dir + "/theorem.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][1]), 8507.785, 1e-3);
}

TEST(CliTest, HelpOnEverySubcommand) {
  for (const char* sub : {"gen-tree", "density", "search", "experiment",
                          "pv-check", "theorem", "probe"}) {
    Outcome o = RunCli(std::string(sub) + " --help");
    EXPECT_EQ(o.status, 0) << sub;
    EXPECT_NE(o.out.find("--seed"), std::string::npos) << sub;
  }
  EXPECT_EQ(RunCli("--help").status, 0);
}

TEST(CliTest, BadInvocations) {
  EXPECT_EQ(RunCli("density --bogus 1").status, 1);
  EXPECT_EQ(RunCli("").status, 1);
  EXPECT_EQ(RunCli("density --gamma 2 --n 1").status, 1);
  EXPECT_EQ(RunCli("experiment --budgets 100 1000 --trees 1").status, 1);
  EXPECT_EQ(RunCli("search --heuristic hist:/nonexistent.hist").status, 2);
}

TEST(CliTest, SearchIsReproducible) {
  std::string a = OutDir("search_a"), b = OutDir("search_b");
  std::string args = "search --b 3 --gamma 0.9 --c 0.7 --budget 500 "
                     "--checkpoints 10 100 500 --heuristic gaussian:0.3 "
                     "--trace true --seed 42 --out-dir ";
  ASSERT_EQ(RunCli(args + a).status, 0);
  ASSERT_EQ(RunCli(args + b).status, 0);
  EXPECT_EQ(ReadFile(a + "/search.json"), ReadFile(b + "/search.json"));
  EXPECT_EQ(ReadFile(a + "/trace.csv"), ReadFile(b + "/trace.csv"));
  EXPECT_EQ(ReadCsv(a + "/trace.csv").size(), 501u);
  std::string c = OutDir("search_c");
  ASSERT_EQ(RunCli("search --b 3 --gamma 0.9 --c 0.7 --budget 500 --heuristic "
                "gaussian:0.3 --trace true --seed 43 --out-dir " + c).status, 0);
  EXPECT_NE(ReadFile(a + "/trace.csv"), ReadFile(c + "/trace.csv"));
}

TEST(CliTest, AlphaBetaSearch) {
  std::string dir = OutDir("ab");
  Outcome o = RunCli("search --algo alphabeta --depth 4 --heuristic perfect "
                  "--out-dir " + dir);
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_NE(ReadFile(dir + "/search.json").find("\"frontier_evaluations\""),
            std::string::npos);
}

TEST(CliTest, GenTree) {
  std::string dir = OutDir("gen");
  Outcome o = RunCli("gen-tree --b 2 --gamma 0 --depth-cap 2 --out-dir " + dir);
  EXPECT_EQ(o.status, 0) << o.out;
  std::string dot = ReadFile(dir + "/tree.dot");
  EXPECT_EQ(dot.rfind("digraph {", 0), 0u);
  EXPECT_EQ(RunCli("gen-tree --b 10 --depth-cap 7").status, 1);
}

TEST(CliTest, DeskGridConfig) {
  std::string dir = OutDir("grid");
  Outcome o = RunCli("experiment --config configs/desk_grid.cfg --workers 4 "
                  "--out-dir " + dir);
  ASSERT_EQ(o.status, 0) << o.out;
  auto rows = ReadCsv(dir + "/results.csv");
  ASSERT_EQ(rows.size(), 1u + 2 * 2 * 3);
  EXPECT_EQ(rows[0].back(), "pathology_index");
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][5] == "10") EXPECT_EQ(rows[i][8], "1.000000") << i;
  }
  EXPECT_TRUE(std::filesystem::exists(dir + "/results.svg"));
  std::string manifest = ReadFile(dir + "/experiment.manifest");
  EXPECT_NE(manifest.find("trees=40"), std::string::npos) << manifest;

  // Command-line flags override the config; worker count never changes results.
  std::string again = OutDir("grid2");
  ASSERT_EQ(RunCli("experiment --config configs/desk_grid.cfg --workers 1 "
                "--trees 40 --out-dir " + again).status, 0);
  EXPECT_EQ(ReadFile(dir + "/results.csv"), ReadFile(again + "/results.csv"));
  std::string fewer = OutDir("grid3");
  ASSERT_EQ(RunCli("experiment --config configs/desk_grid.cfg --trees 5 "
                "--out-dir " + fewer).status, 0);
  EXPECT_NE(ReadFile(fewer + "/experiment.manifest").find("trees=5"),
            std::string::npos);
  EXPECT_EQ(RunCli("experiment --config configs/missing.cfg").status, 1);
}

TEST(CliTest, PvCheck) {
  std::string dir = OutDir("pv");
  Outcome o = RunCli("pv-check --seeds 10 --max-d 8 --instances 20 --playouts 200 "
                  "--out-dir " + dir);
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_NE(o.out.find("holds"), std::string::npos);
}

TEST(CliTest, ProbeAgainstMockEngine) {
  std::string dir = OutDir("probe");
  std::string engine = std::string("--engine '") + CWL_MOCK_ENGINE + " " +
                       CWL_SOURCE_DIR + "/tests/data/wide_engine.json'";
  Outcome o = RunCli("probe --action sample --plies 2 --samples 5 " + engine +
                  " --out-dir " + dir);
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_EQ(ReadCsv(dir + "/positions.fen").size(), 5u);
  EXPECT_TRUE(std::filesystem::exists(dir + "/probe_transcript.txt"));
  EXPECT_EQ(RunCli("probe --action gamma --engine /nonexistent/engine").status, 2);
}

}  // namespace
