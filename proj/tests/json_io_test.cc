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


#include "mph/json_io.h"

#include <string>
#include <variant>

#include "gtest/gtest.h"
#include "mph/error.h"
#include "mph/instances.h"

namespace mph {
namespace {

ErrorCode CodeOf(const std::string& text) {
  try {
    ValuationFromJson(ParseJson(text));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorCode::kSolver;
}

void ExpectSameTable(const Valuation& a, const Valuation& b) {
  const auto ta = ToExplicit(a).table();
  const auto tb = ToExplicit(b).table();
  ASSERT_EQ(ta.size(), tb.size());
  for (std::size_t s = 0; s < ta.size(); ++s) EXPECT_DOUBLE_EQ(ta[s], tb[s]);
}

TEST(JsonIoTest, EveryKindRoundTrips) {
  const char* names[] = {"f1", "f2", "spectrum", "sym3tight", "rand_mph",
                         "cap"};
  for (const char* name : names) {
    const Valuation v = std::get<Valuation>(Gen(name));
    const Json j = ValuationToJson(v);
    const Valuation back = ValuationFromJson(ParseJson(j.dump()));
    EXPECT_EQ(v.index(), back.index()) << name;
    ExpectSameTable(v, back);
  }
}

TEST(JsonIoTest, ReadsHandWrittenSchemas) {
  const Valuation h = ValuationFromJson(ParseJson(
      R"({"m":3,"kind":"hypergraph","edges":[{"set":[0,2],"w":1.5},{"set":[1],"w":2}]})"));
  EXPECT_DOUBLE_EQ(Eval(h, ItemSet::Of({0, 1, 2})), 3.5);
  EXPECT_DOUBLE_EQ(Eval(h, ItemSet::Of({0, 1})), 2.0);

  const Valuation e = ValuationFromJson(
      ParseJson(R"({"m":2,"kind":"explicit","table":[0,1,1,1]})"));
  EXPECT_DOUBLE_EQ(Eval(e, ItemSet::Of({0, 1})), 1.0);

  const Valuation s = ValuationFromJson(
      ParseJson(R"({"m":3,"kind":"symmetric","profile":[0,2,3,3]})"));
  EXPECT_DOUBLE_EQ(Eval(s, ItemSet::Of({1, 2})), 3.0);

  const Valuation mph = ValuationFromJson(ParseJson(
      R"({"m":3,"kind":"mph","clauses":[[{"set":[0,1],"w":3}],[{"set":[2],"w":2},{"set":[0],"w":2}]]})"));
  EXPECT_DOUBLE_EQ(Eval(mph, ItemSet::Of({0, 1})), 3.0);
  EXPECT_DOUBLE_EQ(Eval(mph, ItemSet::Of({0, 2})), 4.0);
  EXPECT_EQ(std::get<MphRepresentation>(mph).k(), 2);
}

TEST(JsonIoTest, RejectsMalformedInput) {
  EXPECT_EQ(CodeOf("{"), ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf(R"({"m":2,"kind":"explicit","table":[]})"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf(R"({"m":2,"kind":"explicit","table":[0,1,1]})"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf(R"({"m":2,"kind":"fancy"})"), ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf(R"({"kind":"explicit","table":[0]})"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf(R"({"m":2,"kind":"hypergraph","edges":[{"set":[2],"w":1}]})"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf(R"({"m":2,"kind":"hypergraph","edges":[{"set":[0],"w":"x"}]})"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf(R"({"m":2,"kind":"symmetric","profile":[0,1]})"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf(R"([1,2])"), ErrorCode::kInvalidInput);
}

TEST(JsonIoTest, InstanceRoundTripKeepsMetadata) {
  const auto inst = std::get<AuctionInstance>(Gen("poa_lb", {{"k", 3}}));
  const AuctionInstance back =
      InstanceFromJson(ParseJson(InstanceToJson(inst).dump()));
  EXPECT_EQ(back.m, inst.m);
  ASSERT_EQ(back.n(), inst.n());
  EXPECT_EQ(back.metadata.construction, "poa_lb");
  EXPECT_EQ(*back.metadata.k, 3);
  EXPECT_DOUBLE_EQ(*back.metadata.poa, 7.0 / 3.0);
  EXPECT_DOUBLE_EQ(back.metadata.params.at("k"), 3.0);
  for (int i = 0; i < inst.n(); ++i) {
    const auto a = AsSingleMinded(inst.bidders[i]);
    const auto b = AsSingleMinded(back.bidders[i]);
    ASSERT_TRUE(a && b) << i;
    EXPECT_EQ(a->bundle, b->bundle);
    EXPECT_DOUBLE_EQ(a->value, b->value);
  }
}

TEST(JsonIoTest, InstanceNeedsBidders) {
  EXPECT_THROW(InstanceFromJson(ParseJson(R"({"m":2,"bidders":[]})")), Error);
  EXPECT_THROW(InstanceFromJson(ParseJson(
                   R"({"m":2,"bidders":[{"m":3,"kind":"explicit","table":[0,0,0,0,0,0,0,0]}]})")),
               Error);
}

TEST(JsonIoTest, FractionalSolutionRoundTrips) {
  const auto inst = std::get<AuctionInstance>(Gen("pp_singleminded", {{"k", 2}}));
  const FractionalSolution sol = SolveConfigLp(inst);
  const Json j = FractionalToJson(sol);
  ASSERT_TRUE(j.contains("entries"));
  for (const Json& e : j["entries"]) {
    EXPECT_TRUE(e.contains("i"));
    EXPECT_TRUE(e.contains("set"));
    EXPECT_TRUE(e.contains("x"));
  }
  const FractionalSolution back = FractionalFromJson(ParseJson(j.dump()));
  ASSERT_EQ(back.entries.size(), sol.entries.size());
  EXPECT_DOUBLE_EQ(back.objective, sol.objective);
  for (std::size_t t = 0; t < sol.entries.size(); ++t) {
    EXPECT_EQ(back.entries[t].bidder, sol.entries[t].bidder);
    EXPECT_EQ(back.entries[t].set, sol.entries[t].set);
    EXPECT_DOUBLE_EQ(back.entries[t].x, sol.entries[t].x);
  }
  EXPECT_TRUE(IsFeasibleFractional(back, inst));
}

TEST(JsonIoTest, PleWitnessUsesHypergraphSchema) {
  PleWitness w{Hypergraph(3), ItemSet::Of({0, 2}), 2};
  w.envelope.Add(ItemSet::Of({0, 2}), 1.0);
  const Json j = PleWitnessToJson(w, true);
  EXPECT_EQ(j["kind"], "hypergraph");
  EXPECT_EQ(j["target_set"], Json::array({0, 2}));
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["valid"], true);
  const Valuation back = ValuationFromJson(j);
  EXPECT_DOUBLE_EQ(Eval(back, ItemSet::Of({0, 2})), 1.0);
}

TEST(JsonIoTest, RoundingStatsCarryCsv) {
  RoundingStats s;
  s.trials = 10;
  s.mean_welfare = 2.5;
  const Json j = RoundingStatsToJson(s);
  EXPECT_EQ(j["trials"], 10);
  EXPECT_EQ(j["csv"], s.CsvRecord());
  EXPECT_EQ(j["csv_header"], s.CsvHeader());
}

}  // namespace
}  // namespace mph
