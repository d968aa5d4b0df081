//
// Copyright 2026 The Corrgauss Authors
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
//

// Drives the built command-line tool as a subprocess.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("corrgauss_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string WriteFile(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  Result Run(const std::string& args, const std::string& env = "",
             const std::string& binary = CORRGAUSS_CLI,
             const std::string& stdin_text = "") {
    const std::string in = WriteFile("stdin.txt", stdin_text);
    const std::string err = (dir_ / "stderr.txt").string();
    const std::string cmd = env + " '" + binary + "' " + args + " < '" + in +
                            "' 2> '" + err + "'";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = Slurp(err);
    return r;
  }

  std::filesystem::path dir_;
};

std::vector<std::vector<std::string>> Csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST_F(CliTest, RunIsByteIdenticalForASeed) {
  const std::string data = WriteFile("d.csv", "1,0,1\n0,1,1\n1,1,0\n");
  const Result a = Run("run --input '" + data + "' --mu 1 --seed 7");
  const Result b = Run("run --input '" + data + "' --mu 1 --seed 7");
  const Result c = Run("run --input '" + data + "' --mu 1 --seed 8");
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  const auto rows = Csv(a.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"kind", "index", "value"}));
  EXPECT_EQ(rows[1][0], "n_estimate");
  EXPECT_EQ(rows[1][1], "-1");
  EXPECT_EQ(rows[4][0], "query");
  EXPECT_EQ(rows[4][1], "2");
}

TEST_F(CliTest, SeedFromEnvironment) {
  const std::string data = WriteFile("d.csv", "1,0\n");
  const Result flag = Run("run --input '" + data + "' --mu 1 --seed 5");
  const Result env = Run("run --input '" + data + "' --mu 1", "CORRGAUSS_SEED=5");
  const Result dflt = Run("run --input '" + data + "' --mu 1");
  const Result d42 = Run("run --input '" + data + "' --mu 1 --seed 42");
  EXPECT_EQ(flag.out, env.out);
  EXPECT_EQ(dflt.out, d42.out);
  EXPECT_EQ(Run("run --input '" + data + "' --mu 1", "CORRGAUSS_SEED=x1")
                .exit_code,
            2);
}

TEST_F(CliTest, NearlyNoiselessRelease) {
  const Result r =
      Run("run --input - --mu 1e6", "", CORRGAUSS_CLI, "1,0\n1,1\n0,1\n");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = Csv(r.out);
  EXPECT_NEAR(std::stod(rows[1][2]), 3.0, 1e-4);
  EXPECT_NEAR(std::stod(rows[2][2]), 2.0, 1e-4);
  EXPECT_NEAR(std::stod(rows[3][2]), 2.0, 1e-4);
}

TEST_F(CliTest, KnownNOmitsCount) {
  const std::string data = WriteFile("d.csv", "1,0\n1,1\n");
  const Result r = Run("run --input '" + data + "' --mu 1e6 --known-n 2");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_THAT(r.out, ::testing::Not(HasSubstr("n_estimate")));
  EXPECT_NEAR(std::stod(Csv(r.out)[1][2]), 2.0, 1e-4);
}

TEST_F(CliTest, OptimalCIsLogged) {
  std::string text;
  for (int i = 0; i < 3; ++i) text += "1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0\n";
  const std::string data = WriteFile("d.csv", text);
  const Result r = Run("run --input '" + data + "' --mu 1 --optimal-c");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_THAT(r.err, HasSubstr("C = 2\n"));
}

TEST_F(CliTest, EpsilonDeltaBudget) {
  const std::string data = WriteFile("d.csv", "1\n");
  const Result r =
      Run("run --input '" + data + "' --epsilon 1 --delta 0.126936");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_THAT(r.err, HasSubstr("mu = 0.99999790"));
}

TEST_F(CliTest, ExitCodes) {
  const std::string ragged = WriteFile("r.csv", "1,0\n1\n");
  const Result bad_data = Run("run --input '" + ragged + "' --mu 1");
  EXPECT_EQ(bad_data.exit_code, 1);
  EXPECT_THAT(bad_data.err, HasSubstr("line 2"));
  EXPECT_EQ(Run("run --mu 1").exit_code, 2);
  EXPECT_EQ(Run("run --input '" + ragged + "'").exit_code, 2);
  EXPECT_EQ(Run("frobnicate").exit_code, 2);
  EXPECT_EQ(Run("").exit_code, 2);
  EXPECT_EQ(Run("--help").exit_code, 0);
  EXPECT_EQ(Run("run --input /nonexistent/x.csv --mu 1").exit_code, 1);
  EXPECT_EQ(Run("audit --runs 10").exit_code, 2);
  EXPECT_EQ(Run("audit --max-d 13 --fast").exit_code, 2);
}

TEST_F(CliTest, GroupedRun) {
  const std::string data = WriteFile("g.csv", "1,1,0\n3,0,1\n1,1,1\n");
  const Result r = Run("grouped-run --input '" + data +
                       "' --groups 3 --mu 1e6 --relation replacement");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = Csv(r.out);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0],
            (std::vector<std::string>{"kind", "group", "index", "value"}));
  EXPECT_EQ(rows[1][0], "count");
  EXPECT_NEAR(std::stod(rows[1][3]), 2.0, 1e-4);
  EXPECT_EQ(rows[2][0], "query");
  EXPECT_NEAR(std::stod(rows[2][3]), 2.0, 1e-4);
  EXPECT_NEAR(std::stod(rows[4][3]), 0.0, 1e-4);

  const Result s = Run("grouped-run --input '" + data +
                       "' --groups 3 --mu 1 --standard");
  ASSERT_EQ(s.exit_code, 0) << s.err;
  EXPECT_EQ(Csv(s.out).size(), 7u);
  EXPECT_EQ(Run("grouped-run --input '" + data +
                "' --groups 2 --mu 1")
                .exit_code,
            1);
}

TEST_F(CliTest, VarianceVsCTable) {
  const Result r = Run("variance-vs-c --d 10000 --mu 1 --c-min 10 "
                       "--c-max 1000 --steps 3");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = Csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[2], (std::vector<std::string>{"100", "2", "20000", "5000.5",
                                               "2"}));
  EXPECT_DOUBLE_EQ(std::stod(rows[1][0]), 10.0);
  EXPECT_DOUBLE_EQ(std::stod(rows[3][0]), 1000.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = std::stod(rows[i][1]);
    const double b = std::stod(rows[i][2]);
    EXPECT_NEAR(std::stod(rows[i][3]), (a + b) / 4.0, 1e-9 * (a + b));
    EXPECT_EQ(rows[i][4], rows[i][1]);
  }
  EXPECT_NEAR(std::stod(rows[1][3]), 2550.25, 1e-9);
}

TEST_F(CliTest, CompareRatios) {
  const Result r = Run("compare --d 1000 --mu 1");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = Csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[1][0], "standard");
  EXPECT_NEAR(std::stod(rows[1][2]), std::sqrt(1000.0), 1e-9);
  EXPECT_EQ(rows[3][0], "correlated");
  EXPECT_NEAR(std::stod(rows[3][3]), 0.51581138830084189666, 1e-5);
  EXPECT_NEAR(std::stod(rows[3][2]), 16.311388300841897, 1e-9);
  EXPECT_EQ(rows[4][0], "known_n");
  EXPECT_DOUBLE_EQ(std::stod(rows[4][3]), 0.5);
  EXPECT_THAT(r.err, HasSubstr("266.06"));

  // Grouped replacement: sqrt(d + 4) against sqrt(2d) ties at d = 4.
  const auto four = Csv(Run("compare --d 4 --mu 1").out);
  EXPECT_DOUBLE_EQ(std::stod(four[5][2]), std::stod(four[2][2]));
  const auto five = Csv(Run("compare --d 5 --mu 1").out);
  EXPECT_LT(std::stod(five[5][2]), std::stod(five[2][2]));
}

TEST_F(CliTest, Calibrate) {
  Result r = Run("calibrate --mu 1 --epsilon 1");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "mu=1\nrho=0.5\nepsilon=1\ndelta=0.126936737507\n");
  r = Run("calibrate --epsilon 1 --delta 0.126936");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_THAT(r.out, StartsWith("mu=0.999997905198\n"));
  EXPECT_EQ(Run("calibrate --epsilon 1").exit_code, 2);
  EXPECT_EQ(Run("calibrate --epsilon 1e6 --delta 0.5").exit_code, 1);
}

TEST_F(CliTest, AuditFastPasses) {
  const Result r = Run("audit --max-d 4 --fast");
  EXPECT_EQ(r.exit_code, 0) << r.out << r.err;
  EXPECT_THAT(r.out, HasSubstr("PASS equivalence[d=4][fast].embedded.cov[4,4]"));
  EXPECT_THAT(r.out, ::testing::Not(HasSubstr("FAIL")));
}

TEST_F(CliTest, InjectedFaultIsCaught) {
  const Result r = Run("audit --max-d 4", "", CORRGAUSS_FAULTY_CLI);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_THAT(r.out, HasSubstr("FAIL equivalence[d=4]"));
}

}  // namespace
