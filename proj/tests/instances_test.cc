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

#include "mph/instances.h"

#include <string>
#include <utility>
#include <variant>

#include "gtest/gtest.h"
#include "mph/error.h"
#include "mph/ple.h"
#include "mph/properties.h"

namespace mph {
namespace {

Valuation AsValuation(Generated g) { return std::get<Valuation>(std::move(g)); }

TEST(CatalogTest, EveryEntryBuildsWithDefaults) {
  for (const CatalogEntry& e : Catalog()) {
    const Generated g = Gen(e.name);
    EXPECT_EQ(std::holds_alternative<AuctionInstance>(g),
              e.produces == "instance")
        << e.name;
    EXPECT_FALSE(e.expectations.empty()) << e.name;
  }
}

TEST(CatalogTest, EveryExpectationHoldsWithDefaults) {
  for (const CatalogEntry& e : Catalog()) {
    const ExpectationReport r = VerifyExpectations(e.name);
    EXPECT_TRUE(r.passed) << e.name;
    EXPECT_FALSE(r.results.empty()) << e.name;
    for (const ExpectationResult& x : r.results) {
      EXPECT_TRUE(x.ok) << e.name << ": " << x.name << " expected "
                        << x.relation << " " << x.expected << ", got "
                        << x.actual;
    }
  }
}

TEST(CatalogTest, AnchorValues) {
  const auto s3 = std::get<SymmetricValuation>(AsValuation(Gen("sym3tight")));
  EXPECT_DOUBLE_EQ(s3.At(6), 11.0);
  EXPECT_DOUBLE_EQ(s3.At(5), 5.0);
  const auto s4 = std::get<SymmetricValuation>(AsValuation(Gen("sym4tight")));
  EXPECT_DOUBLE_EQ(s4.At(12), 385.0);
  EXPECT_DOUBLE_EQ(s4.At(11), 220.0);
  const ExplicitValuation f1 = ToExplicit(AsValuation(Gen("f1", {{"m", 5}})));
  EXPECT_TRUE(CheckProperties(f1).submodular);
  EXPECT_EQ(*MphLevel(f1).level, 1);
}

TEST(CatalogTest, SpectrumDefaults) {
  const auto h = std::get<Hypergraph>(AsValuation(Gen("spectrum")));
  EXPECT_DOUBLE_EQ(h.Value(ItemSet::Full(4)), 6.0);
  EXPECT_DOUBLE_EQ(h.Weight(ItemSet::Full(4)), -4.0);
  const Ranks r = h.ranks();
  EXPECT_EQ(r.positive_rank, 2);
  EXPECT_EQ(r.negative_rank, 4);
  // One more unit of penalty breaks monotonicity.
  EXPECT_THROW(Gen("spectrum", {{"penalty", 5}}), Error);
  const auto h2 =
      std::get<Hypergraph>(AsValuation(Gen("spectrum", {{"w_pair", 6}})));
  EXPECT_DOUBLE_EQ(h2.Weight(ItemSet::Full(4)), -6.0);
}

TEST(CatalogTest, FkNonnegVanishesOnSpecialSets) {
  for (int k = 1; k <= 3; ++k) {
    const ExplicitValuation f =
        ToExplicit(AsValuation(Gen("fk_nonneg", {{"k", k}, {"m", k + 4}})));
    EXPECT_TRUE(CheckProperties(f).nonnegative);
    ItemSet s = ItemSet::Singleton(0);
    for (int j = 1; j <= k; ++j) s = s.With(j);
    EXPECT_DOUBLE_EQ(f(s), 0.0);
  }
}

TEST(CatalogTest, RandomMonotoneHypergraphsAreMonotone) {
  for (int seed = 0; seed < 40; ++seed) {
    const int m = 3 + seed % 5;
    const int r = std::min(m, 1 + seed % 4);
    const Params p = {{"m", m}, {"r", r}, {"seed", seed}};
    const ExplicitValuation f = ToExplicit(AsValuation(Gen("rand_mono_hg", p)));
    EXPECT_TRUE(CheckProperties(f).monotone) << seed;
    EXPECT_LE(ToHypergraph(f).ranks().rank, r);
  }
}

TEST(CatalogTest, RandomSymmetricAreMonotoneWithRankR) {
  for (int seed = 0; seed < 30; ++seed) {
    const int r = 2 + seed % 3;
    const auto s = std::get<SymmetricValuation>(
        AsValuation(Gen("rand_sym", {{"m", 30}, {"r", r}, {"seed", seed}})));
    EXPECT_TRUE(s.Monotone(1e-9));
    EXPECT_DOUBLE_EQ(s.At(0), 0.0);
    EXPECT_LE(SymmetricMphLevel(s), 3 * r * r);
  }
}

TEST(CatalogTest, BuildsAreDeterministic) {
  const Params p = {{"m", 7}, {"n", 3}, {"k", 2}, {"seed", 9}};
  const auto a = std::get<AuctionInstance>(Gen("rand_mph_auction", p));
  const auto b = std::get<AuctionInstance>(Gen("rand_mph_auction", p));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(ToExplicit(a.bidders[i]).table(), ToExplicit(b.bidders[i]).table());
  }
  const auto c = std::get<AuctionInstance>(
      Gen("rand_mph_auction", {{"m", 7}, {"n", 3}, {"k", 2}, {"seed", 10}}));
  EXPECT_NE(ToExplicit(a.bidders[0]).table(), ToExplicit(c.bidders[0]).table());
  EXPECT_EQ(*a.metadata.k, 2);
}

TEST(CatalogTest, VerifyNonDefaultParameters) {
  EXPECT_TRUE(VerifyExpectations("pp_singleminded", {{"k", 4}}).passed);
  EXPECT_TRUE(VerifyExpectations("poa_lb", {{"k", 2}}).passed);
  EXPECT_TRUE(VerifyExpectations("flat2", {{"m", 6}}).passed);
  EXPECT_TRUE(VerifyExpectations("rand_mph", {{"m", 5}, {"k", 3}}).passed);
}

TEST(CatalogTest, RejectsBadRequests) {
  EXPECT_THROW(Gen("no_such_entry"), Error);
  EXPECT_THROW(Gen("f1", {{"items", 3}}), Error);
  EXPECT_THROW(Gen("f1", {{"m", 2.5}}), Error);
  EXPECT_THROW(Gen("f1", {{"m", "three"}}), Error);
  EXPECT_THROW(Gen("flat2", {{"m", 5}}), Error);
  EXPECT_THROW(Gen("fk_nonneg", {{"k", 3}, {"m", 5}}), Error);
  try {
    Gen("pp_singleminded", {{"k", 5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
}

}  // namespace
}  // namespace mph
