// Copyright 2026 The MPH Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "mph/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "mph/json_io.h"

namespace mph {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mph_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  Json Report() const { return ParseJson(out_.str()); }

  std::string Write(const std::string& name, const std::string& text) {
    std::ofstream(Path(name)) << text;
    return Path(name);
  }

  std::string Gen(const std::string& entry, std::vector<std::string> params) {
    std::vector<std::string> args = {"gen", entry, "-o", Path(entry + ".json")};
    for (const std::string& p : params) {
      args.push_back("-p");
      args.push_back(p);
    }
    EXPECT_EQ(Run(args), kExitOk) << err_.str();
    return Path(entry + ".json");
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, ClassifyF1) {
  ASSERT_EQ(Run({"classify", Gen("f1", {"m=4"})}), kExitOk) << err_.str();
  const Json r = Report();
  EXPECT_EQ(r["mph_level"], 1);
  EXPECT_EQ(r["submodular"], true);
  EXPECT_EQ(r["supermodular_degree"], 0);
  EXPECT_EQ(r["ranks"]["rank"], 4);
}

TEST_F(CliTest, ClassifySym3Tight) {
  ASSERT_EQ(Run({"classify", Gen("sym3tight", {})}), kExitOk) << err_.str();
  EXPECT_EQ(Report()["symmetric_mph_level"], 4);
}

TEST_F(CliTest, ClassifyRejectsBadInput) {
  EXPECT_EQ(Run({"classify", Write("e.json", R"({"m":2,"kind":"explicit","table":[]})")}),
            kExitInput);
  EXPECT_NE(err_.str().find("empty table"), std::string::npos);
  EXPECT_EQ(Run({"classify", Write("b.json", "{\"m\":")}), kExitInput);
  EXPECT_EQ(Run({"classify", Path("missing.json")}), kExitInput);
}

TEST_F(CliTest, ClassifyLargeHypergraphSkipsTables) {
  ASSERT_EQ(Run({"classify", Gen("rand_mph", {"m=20"})}), kExitOk) << err_.str();
  const Json r = Report();
  EXPECT_EQ(r["m"], 20);
  EXPECT_TRUE(r["skipped"].contains("mph_level"));
}

TEST_F(CliTest, WelfareReportsExactGap) {
  ASSERT_EQ(Run({"welfare", Gen("pp_singleminded", {"k=3"}), "--certify"}), kExitOk)
      << err_.str();
  const Json r = Report();
  EXPECT_DOUBLE_EQ(r["opt"].get<double>(), 1.0);
  EXPECT_NEAR(r["gap"].get<double>(), 7.0 / 3.0, 1e-9);
  EXPECT_EQ(r["gap_exact"], "7/3");
  EXPECT_FALSE(r.contains("rounding"));
}

TEST_F(CliTest, WelfareSingleBidderGapIsOne) {
  const std::string path = Write(
      "one.json",
      R"({"m":2,"bidders":[{"m":2,"kind":"explicit","table":[0,1,2,2.5]}]})");
  ASSERT_EQ(Run({"welfare", path, "--round", "20"}), kExitOk) << err_.str();
  const Json r = Report();
  EXPECT_DOUBLE_EQ(r["opt"].get<double>(), 2.5);
  EXPECT_NEAR(r["gap"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(r["rounding"]["trials"], 20);
  EXPECT_NEAR(r["rounding"]["mean_welfare"].get<double>(), 2.5, 1e-9);
}

TEST_F(CliTest, WelfareRoundingIsSeeded) {
  const std::string inst = Gen("rand_mph_auction", {"m=6", "n=3", "k=2"});
  ASSERT_EQ(Run({"welfare", inst, "--round", "200", "--seed", "5", "--threads", "1"}),
            kExitOk);
  const Json a = Report()["rounding"];
  ASSERT_EQ(Run({"welfare", inst, "--round", "200", "--seed", "5", "--threads", "3"}),
            kExitOk);
  EXPECT_EQ(Report()["rounding"], a);
}

TEST_F(CliTest, WelfareCapacityExitCode) {
  const std::string inst = Gen("rand_mph_auction", {"m=20", "n=2"});
  EXPECT_EQ(Run({"welfare", inst, "--exact"}), kExitCapacity);
}

TEST_F(CliTest, WelfareWritesSolution) {
  const std::string inst = Gen("pp_singleminded", {"k=2"});
  ASSERT_EQ(Run({"welfare", inst, "--lp", "--solution", Path("sol.json")}), kExitOk);
  const FractionalSolution sol = FractionalFromJson(ParseJson(Slurp(Path("sol.json"))));
  EXPECT_NEAR(sol.objective, 1.5, 1e-9);
}

TEST_F(CliTest, AuctionLearnIsReproducible) {
  const std::string inst = Gen("rand_mph_auction", {"m=5", "n=3", "k=2", "seed=4"});
  ASSERT_EQ(Run({"auction", inst, "--learn", "3000", "--seed", "7", "--csv",
                 Path("a.csv")}),
            kExitOk)
      << err_.str();
  const Json r = Report();
  ASSERT_EQ(Run({"auction", inst, "--learn", "3000", "--seed", "7", "--csv",
                 Path("b.csv")}),
            kExitOk);
  const std::string a = Slurp(Path("a.csv"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, Slurp(Path("b.csv")));
  EXPECT_EQ(a.rfind("iteration,avg_welfare,utility_0", 0), 0u);
  EXPECT_LE(r["poa_ratio"].get<double>(), 4.0);
  EXPECT_EQ(r["regret"].size(), 3u);
}

TEST_F(CliTest, AuctionRejectsUnknownRule) {
  const std::string inst = Gen("rand_mph_auction", {"m=3", "n=2"});
  EXPECT_EQ(Run({"auction", inst, "--rule", "third"}), kExitInput);
}

TEST_F(CliTest, AuctionVerifiesEquilibrium) {
  ASSERT_EQ(Run({"auction", Gen("poa_lb", {"k=3"}), "--verify-ne", "--samples",
                 "100000", "--threads", "1"}),
            kExitOk)
      << err_.str();
  const Json r = Report();
  EXPECT_LE(r["closed_form_max_abs"].get<double>(), 1e-6);
  EXPECT_EQ(r["passed"], true);
  EXPECT_NEAR(r["metadata_poa"].get<double>(), 7.0 / 3.0, 1e-12);
}

TEST_F(CliTest, VerifyNeNeedsPoaInstance) {
  const std::string inst = Gen("rand_mph_auction", {"m=3", "n=2"});
  EXPECT_EQ(Run({"auction", inst, "--verify-ne"}), kExitInput);
}

TEST_F(CliTest, SmoothnessSpotCheck) {
  const std::string path = Write(
      "item.json",
      R"({"m":1,"bidders":[{"m":1,"kind":"explicit","table":[0,1]},)"
      R"({"m":1,"kind":"explicit","table":[0,0.6]}]})");
  ASSERT_EQ(Run({"auction", path, "--smoothness", "--trials", "2000"}), kExitOk)
      << err_.str();
  EXPECT_EQ(Report()["violations"], 0);
}

TEST_F(CliTest, PleCommands) {
  ASSERT_EQ(Run({"ple", Gen("spectrum", {}), "--method", "flow"}), kExitOk)
      << err_.str();
  Json r = Report();
  EXPECT_EQ(r["valid"], true);
  EXPECT_EQ(r["kind"], "hypergraph");
  EXPECT_EQ(r["target_set"], Json::array({0, 1, 2, 3}));

  ASSERT_EQ(Run({"ple", Gen("f2", {}), "--method", "lp", "-k", "1"}), kExitOk);
  EXPECT_EQ(Report()["valid"], false);

  ASSERT_EQ(Run({"ple", "--certificate", "--m", "20", "--r", "4"}), kExitOk);
  r = Report();
  EXPECT_EQ(r["dual_y"].size(), 20u);
  EXPECT_EQ(r["primal_x"].size(), 4u);
}

TEST_F(CliTest, GenListAndVerify) {
  ASSERT_EQ(Run({"gen", "--list"}), kExitOk);
  const Json list = Report();
  EXPECT_EQ(list.size(), Catalog().size());
  ASSERT_EQ(Run({"verify", "pp_singleminded", "-p", "k=4"}), kExitOk) << err_.str();
  EXPECT_EQ(Report()["passed"], true);
  EXPECT_EQ(Run({"verify", "--all"}), kExitOk) << err_.str();
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Run({}), kExitInput);
  EXPECT_EQ(Run({"frobnicate"}), kExitInput);
  EXPECT_EQ(Run({"--help"}), kExitOk);
  EXPECT_NE(out_.str().find("classify"), std::string::npos);
  EXPECT_EQ(Run({"gen", "f1", "-p", "m=abc"}), kExitInput);
  EXPECT_EQ(Run({"gen", "f1", "-p", "m"}), kExitInput);
  EXPECT_EQ(Run({"gen", "no_such_entry"}), kExitInput);
}

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCodeFor(ErrorCode::kInvalidInput), 2);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kNotMonotone), 2);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kUnsupported), 2);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kCapacity), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kVerification), 4);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kSolver), 4);
}

}  // namespace
}  // namespace mph
