// Copyright 2026 The photothin Authors
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

#include "photothin/cli/scenarios.h"

#include <cmath>

#include "gtest/gtest.h"
#include "test_support.h"

namespace photothin::cli {
namespace {

TEST(WideSubstituteTest, MeanAndSupport) {
  const Pmf p = wide_substitute_input();
  EXPECT_EQ(p.max_index(), 1000u);
  EXPECT_NEAR(mean(p), 488.5, 1e-9);
  EXPECT_NEAR(p.total_mass(), 1.0, 1e-12);
  // Oracle: the mixture variance from the component moments.
  const double within = 0.5 * (600 * 0.55 * 0.45) + 0.5 * (1000 * 0.647 * 0.353);
  const double between = 0.25 * (647.0 - 330.0) * (647.0 - 330.0);
  EXPECT_NEAR(moments(p).variance, within + between, 1e-6);
}

TEST(SolveTwoPointTest, HitsTargetC) {
  for (double c : {0.45, 0.30, 0.05}) {
    const TwoPointSource s = solve_two_point_for_c(0, 10, c);
    // Closed form on {0, b}: w = (b - 1) / (2 b (C + 1/2)).
    EXPECT_NEAR(s.pb, 9.0 / (20.0 * (c + 0.5)), 1e-12);
    EXPECT_NEAR(moments(to_pmf(SourceSpec{s})).c, c, 1e-12);
  }
  const TwoPointSource near_det = solve_two_point_for_c(31, 32, -0.016);
  EXPECT_NEAR(moments(to_pmf(SourceSpec{near_det})).c, -0.016, 1e-13);
}

TEST(SolveTwoPointTest, UnreachableTarget) {
  // On {31, 32} C is confined to [-1/62, -1/64].
  EXPECT_THROW(solve_two_point_for_c(31, 32, 0.1), Error);
  EXPECT_THROW(solve_two_point_for_c(5, 5, 0.1), Error);
}

TEST(Table1LadderTest, ReproducesPattern) {
  const auto rows = table1_ladder();
  ASSERT_EQ(rows.size(), 6u);
  const double targets[] = {0.0045, 0.0030, 0.0018, 0.0011, 0.0005, -0.00016};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const LadderRow& row = rows[i];
    EXPECT_NEAR(row.lambda, 0.1, 1e-15);
    EXPECT_NEAR(row.lambda2c, targets[i], 1e-12);
    EXPECT_TRUE(within_envelope(row)) << i;
    EXPECT_EQ(std::signbit(row.delta[0]), std::signbit(row.lambda2c)) << i;
    EXPECT_NE(std::signbit(row.delta[1]), std::signbit(row.lambda2c)) << i;
  }
  EXPECT_NEAR(rows.front().delta[0], 0.0045, rows.front().bound);
  EXPECT_GT(rows.back().delta[1], 0.0);
}

TEST(Table1LadderTest, DeltasAgreeWithOracle) {
  for (const LadderRow& row : table1_ladder()) {
    const Pmf p = to_pmf(row.spec);
    const double eta = 0.1 / mean(p);
    const auto q = testing::oracle_thin(p, eta);
    for (std::uint64_t n = 0; n < 5; ++n) {
      const long double expected = q[n] - testing::oracle_poisson(row.lambda, n);
      EXPECT_NEAR(row.delta[n], static_cast<double>(expected), 1e-14);
    }
  }
}

TEST(FigureSeriesTest, LambdasAndShapes) {
  const auto figs = figure_series();
  ASSERT_EQ(figs.size(), 4u);
  EXPECT_NEAR(figs[0].lambda, 48.85, 1e-9);
  EXPECT_NEAR(figs[1].lambda, 0.4885, 1e-9);
  EXPECT_NEAR(figs[2].lambda, 0.0977, 1e-9);
  EXPECT_NEAR(figs[3].lambda, 0.1, 1e-12);

  auto tv = [](const FigureSeries& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.n.size(); ++i) acc += std::abs(s.p_eta[i] - s.p_poisson[i]);
    return 0.5 * acc;
  };
  // Far from Poisson at lambda = 48.85, close at 0.0977.
  EXPECT_GT(tv(figs[0]), 0.3);
  EXPECT_LT(tv(figs[2]), 0.002);
  EXPECT_GT(tv(figs[3]), 0.05);
  for (const FigureSeries& s : figs) {
    ASSERT_EQ(s.n.size(), s.p_eta.size());
    ASSERT_EQ(s.n.size(), s.p_poisson.size());
    EXPECT_EQ(s.n.front(), 0u);
  }
}

}  // namespace
}  // namespace photothin::cli
