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

#include "photothin/pmf.h"

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "gtest/gtest.h"
#include "photothin/numerics.h"
#include "test_support.h"

namespace photothin {
namespace {

using testing::Pairs;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected photothin::Error";
  return ErrorCode::kOverflow;
}

TEST(MakePmfTest, AcceptsValidTablesAndSortsThem) {
  const Pmf fair = make_pmf({{0, 0.5}, {1, 0.5}});
  EXPECT_EQ(fair.size(), 2u);
  EXPECT_EQ(fair.tail_defect(), 0.0);

  const Pmf singular = make_pmf({{1001, 0.05}, {1, 0.95}});
  ASSERT_EQ(singular.size(), 2u);
  EXPECT_EQ(singular.entries()[0].index, 1u);
  EXPECT_EQ(singular.entries()[1].index, 1001u);
  EXPECT_EQ(singular(1001), 0.05);
  EXPECT_EQ(singular(500), 0.0);
  EXPECT_EQ(singular.max_index(), 1001u);
}

TEST(MakePmfTest, RejectsBadInput) {
  EXPECT_EQ(code_of([] { make_pmf({{0, 0.5}, {1, 0.4}}); }), ErrorCode::kNotNormalized);
  EXPECT_EQ(code_of([] { make_pmf({{0, 1.5}, {1, -0.5}}); }), ErrorCode::kNegativeMass);
  EXPECT_EQ(code_of([] { make_pmf({{2, 0.5}, {2, 0.5}}); }), ErrorCode::kDuplicateIndex);
  EXPECT_EQ(code_of([] { make_pmf({{0, std::nan("")}}); }), ErrorCode::kNegativeMass);
  EXPECT_EQ(code_of([] { make_pmf({}); }), ErrorCode::kNotNormalized);
}

TEST(MakePmfTest, NormalizationToleranceIsOneInABillion) {
  EXPECT_NO_THROW(make_pmf({{0, 0.5}, {1, 0.5 + 5e-10}}));
  EXPECT_EQ(code_of([] { make_pmf({{0, 0.5}, {1, 0.5 + 5e-9}}); }),
            ErrorCode::kNotNormalized);
}

TEST(FromSortedTest, RejectsOutOfOrderIndices) {
  EXPECT_EQ(code_of([] { Pmf::from_sorted({{3, 0.5}, {1, 0.5}}); }),
            ErrorCode::kDuplicateIndex);
  EXPECT_EQ(code_of([] { Pmf::from_sorted({{0, 1.0}}, -1e-3); }),
            ErrorCode::kNegativeMass);
}

TEST(AttenuationCoefficientTest, RangeIsClosedUnitInterval) {
  EXPECT_NO_THROW(AttenuationCoefficient(0.0));
  EXPECT_NO_THROW(AttenuationCoefficient(1.0));
  EXPECT_EQ(code_of([] { AttenuationCoefficient(1.0000001); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { AttenuationCoefficient(-1e-300); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { AttenuationCoefficient(std::nan("")); }), ErrorCode::kInvalidParameter);
}

TEST(PoissonFamilyTest, DirectFormulaAtSmallMean) {
  const Pmf p = poisson_family(0.1);
  EXPECT_NEAR(p(0), 0.90483741803595957316, 4e-16);
  EXPECT_NEAR(p(1), 0.090483741803595957316, 4e-17);
  EXPECT_LE(p.tail_defect(), 1e-12);
}

TEST(PoissonFamilyTest, TinyMeanConcentratesAtZero) {
  for (double mu : {1e-6, 1e-12, 1e-300}) {
    const Pmf p = poisson_family(mu);
    EXPECT_NEAR(p(0), 1.0, 2 * mu);
    EXPECT_LE(p.tail_defect(), 1e-12);
  }
}

TEST(PoissonFamilyTest, TruncationIsSmallestCutMeetingTheBudget) {
  const double eps = 1e-12;
  const Pmf p = poisson_family(5.0, eps);
  const std::uint64_t n_max = p.max_index();
  // Oracle: upper tails by direct long double summation.
  auto tail_after = [](std::uint64_t n) {
    long double s = 0.0L;
    for (std::uint64_t k = n + 1; k < 200; ++k) s += testing::oracle_poisson(5.0L, k);
    return s;
  };
  EXPECT_LE(tail_after(n_max), eps);
  EXPECT_GT(tail_after(n_max - 1), eps);
  EXPECT_NEAR(p.tail_defect(), static_cast<double>(tail_after(n_max)), 1e-25);
  // No renormalization: retained masses equal the raw formula up to the
  // rounding of log-space terms whose parts reach order 50.
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const double expected = static_cast<double>(testing::oracle_poisson(5.0L, n));
    EXPECT_NEAR(p(n), expected, 1e-13 * expected) << n;
  }
}

TEST(PoissonFamilyTest, MeanMatchesDeepSeriesOracle) {
  const Pmf p = poisson_family(5.0, 1e-12);
  // 10x deeper truncation than the 1e-12 cut reaches.
  long double oracle = 0.0L;
  for (std::uint64_t n = 0; n <= 10 * p.max_index(); ++n) {
    oracle += static_cast<long double>(n) * testing::oracle_poisson(5.0L, n);
  }
  EXPECT_NEAR(mean(p), static_cast<double>(oracle), 1e-10);
}

TEST(PoissonFamilyTest, RejectsBadParameters) {
  EXPECT_EQ(code_of([] { poisson_family(0.0); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { poisson_family(-1.0); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { poisson_family(1.0, 1e-5); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { poisson_family(1.0, 0.0); }), ErrorCode::kInvalidParameter);
}

TEST(MomentsTest, DeterministicInputHasSmallestC) {
  for (std::uint64_t k : {1u, 3u, 31u, 1000u}) {
    const MomentSummary m = moments(make_pmf({{k, 1.0}}));
    EXPECT_EQ(m.mean, static_cast<double>(k));
    EXPECT_EQ(m.variance, 0.0);
    EXPECT_DOUBLE_EQ(m.c, -1.0 / (2.0 * static_cast<double>(k)));
  }
}

TEST(MomentsTest, SingularTwoPoint) {
  const MomentSummary m = moments(make_pmf({{1, 0.95}, {1001, 0.05}}));
  EXPECT_NEAR(m.mean, 51.0, 1e-12);
  EXPECT_NEAR(m.variance, 47500.0, 1e-8);
  // Exact: 47449 / 5202. Published rounding: 9.11.
  EXPECT_NEAR(m.c, 47449.0 / 5202.0, 1e-12);
  EXPECT_NEAR(m.c, 9.12, 0.02);
  EXPECT_NEAR(m.d, 376.92855688988398127, 1e-10);
}

TEST(MomentsTest, PoissonHasZeroC) {
  EXPECT_NEAR(moments(poisson_family(2.0, 1e-14)).c, 0.0, 1e-8);
  EXPECT_NEAR(moments(poisson_family(5.0)).c, 0.0, 1e-8);
}

TEST(MomentsTest, ZeroMeanIsAnError) {
  EXPECT_EQ(code_of([] { moments(make_pmf({{0, 1.0}})); }), ErrorCode::kZeroMean);
}

TEST(MomentsTest, RandomizedInvariantsAgainstOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Pmf p = testing::random_pmf(rng, trial % 2 ? 2000 : 10000);
    if (mean(p) == 0.0) continue;
    const MomentSummary m = moments(p);
    const auto o = testing::oracle_moments(p);
    EXPECT_GE(m.variance, -1e-12);
    EXPECT_GE(m.m3, -1e-12);
    EXPECT_GE(m.d, -1e-12);
    EXPECT_GE(m.c, -1.0 / (2.0 * m.mean) - 1e-12);
    EXPECT_NEAR(m.mean, static_cast<double>(o.mean), 1e-13 * m.mean);
    EXPECT_NEAR(m.variance, static_cast<double>(o.variance),
                1e-12 * (m.variance + m.mean * m.mean));
    EXPECT_NEAR(m.m3, static_cast<double>(o.m3), 1e-13 * m.m3 + 1e-12);
  }
}

TEST(GfDerivativeTest, LowOrdersAtOneAreMoments) {
  const Pmf singular = make_pmf({{1, 0.95}, {1001, 0.05}});
  EXPECT_NEAR(gf_derivative(singular, 0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(gf_derivative(singular, 1, 1.0), 51.0, 51.0 * 1e-12);

  const Pmf pois = poisson_family(3.0, 1e-14);
  EXPECT_NEAR(gf_derivative(pois, 0, 1.0), 1.0 - pois.tail_defect(), 1e-15);
}

TEST(GfDerivativeTest, TwoTermClosedForm) {
  const Pmf singular = make_pmf({{1, 0.95}, {1001, 0.05}});
  const double z = 0.998;
  const double expected = 0.95 * z + 0.05 * std::pow(z, 1001);
  EXPECT_NEAR(gf_derivative(singular, 0, z), expected, 1e-15);
  // Second derivative: only the 1001 point contributes.
  const double second = 0.05 * 1001.0 * 1000.0 * std::pow(z, 999);
  EXPECT_NEAR(gf_derivative(singular, 2, z), second, 1e-12 * second);
  // z = 0 keeps only N == order.
  EXPECT_NEAR(gf_derivative(singular, 1, 0.0), 0.95, 1e-16);
  EXPECT_EQ(gf_derivative(singular, 2, 0.0), 0.0);
}

TEST(GfDerivativeTest, RandomizedFactorialMomentIdentities) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Pmf p = testing::random_pmf(rng);
    if (mean(p) == 0.0) continue;
    const MomentSummary m = moments(p);
    EXPECT_NEAR(gf_derivative(p, 1, 1.0), m.mean, 1e-12 * m.mean);
    const double g2 = m.variance + m.mean * m.mean - m.mean;
    EXPECT_NEAR(gf_derivative(p, 2, 1.0), g2, 1e-10 * std::abs(g2) + 1e-12);
    EXPECT_NEAR(gf_derivative(p, 3, 1.0), m.m3, 1e-10 * m.m3 + 1e-12);
  }
}

TEST(GfDerivativeTest, LogVariantSurvivesOverflow) {
  const Pmf p = make_pmf({{1001, 1.0}});
  // 1001!/(1001-200)! is about 1e596, beyond double range.
  EXPECT_TRUE(std::isinf(gf_derivative(p, 200, 1.0)));
  EXPECT_NEAR(log_gf_derivative(p, 200, 1.0), log_falling_factorial(1001, 200), 1e-9);
}

TEST(TvDistanceTest, BasicCases) {
  const Pmf a = make_pmf({{0, 1.0}});
  const Pmf b = make_pmf({{1, 1.0}});
  EXPECT_EQ(tv_distance(a, a), 0.0);
  EXPECT_EQ(tv_distance(a, b), 1.0);
  const Pmf fair = make_pmf({{0, 0.5}, {1, 0.5}});
  EXPECT_DOUBLE_EQ(tv_distance(a, fair), 0.5);
}

TEST(TvDistanceTest, NearbyPoissonsAgainstSeriesOracle) {
  const Pmf p = poisson_family(0.1, 1e-14);
  const Pmf q = poisson_family(0.0977, 1e-14);
  // 50-digit series evaluation of (1/2) sum |P^0.1(n) - P^0.0977(n)|.
  constexpr double kOracle = 0.002083521192368419378;
  EXPECT_NEAR(tv_distance(p, q), kOracle, 1e-13);
}

TEST(TvDistanceTest, RandomizedMetricProperties) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Pmf a = testing::random_pmf(rng, 64, 16);
    const Pmf b = testing::random_pmf(rng, 64, 16);
    const Pmf c = testing::random_pmf(rng, 64, 16);
    EXPECT_EQ(tv_distance(a, b), tv_distance(b, a));
    EXPECT_LE(tv_distance(a, c), tv_distance(a, b) + tv_distance(b, c) + 1e-12);
    EXPECT_GE(tv_distance(a, b), 0.0);
    EXPECT_LE(tv_distance(a, b), 1.0 + 1e-12);
  }
}

TEST(PmfConcurrencyTest, ConcurrentReadOnlyUseIsConsistent) {
  const Pmf p = poisson_family(40.0);
  const double serial = gf_derivative(p, 5, 0.9);
  std::vector<double> results(8);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < results.size(); ++i) {
      pool.emplace_back([&, i] { results[i] = gf_derivative(p, 5, 0.9); });
    }
  }
  for (double r : results) EXPECT_EQ(r, serial);
}

}  // namespace
}  // namespace photothin
