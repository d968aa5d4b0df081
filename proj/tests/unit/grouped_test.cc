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

#include "corrgauss/grouped.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "unit/test_stats.h"

namespace corrgauss {
namespace {

using testing::CovarianceSe;
using testing::SampleMoments;

const PrivacyBudget kMuOne = PrivacyBudget::FromMu(1.0);

GroupedDataset Example() {
  return LoadGroupedDataset("1,0.5,0.5,0,1\n1,1,0,0,0\n3,0.25,0.25,1,1\n", 3);
}

TEST(GroupedNoiseTest, AddRemoveMatchesFlatMechanism) {
  const GroupedNoise n = GroupedNoiseFor(4, kMuOne, NeighborRelation::kAddRemove);
  EXPECT_DOUBLE_EQ(n.shared_variance, 0.75);
  EXPECT_DOUBLE_EQ(n.independent_variance, 1.5);
  EXPECT_DOUBLE_EQ(n.shared_variance + n.independent_variance, 2.25);
}

TEST(GroupedNoiseTest, ReplacementUsesPrintedValues) {
  const GroupedNoise n =
      GroupedNoiseFor(4, kMuOne, NeighborRelation::kReplacement);
  EXPECT_DOUBLE_EQ(n.shared_variance, 4.0);
  EXPECT_DOUBLE_EQ(n.independent_variance, 4.0);
  EXPECT_DOUBLE_EQ(n.shared_variance + n.independent_variance, 8.0);
  EXPECT_DOUBLE_EQ(4.0 * n.shared_variance, 16.0);  // count estimate
}

TEST(GroupedNoiseTest, ScalesWithInverseMuSquared) {
  const GroupedNoise a =
      GroupedNoiseFor(9, PrivacyBudget::FromMu(2.0), NeighborRelation::kAddRemove);
  EXPECT_DOUBLE_EQ(a.shared_variance, 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(a.independent_variance, 3.0 / 4.0);
}

TEST(ReleaseGroupedTest, SamplingOrderIsRowByRow) {
  for (NeighborRelation rel :
       {NeighborRelation::kAddRemove, NeighborRelation::kReplacement}) {
    const GroupedDataset g = Example();
    RngStream s = MakeStream(3, 0);
    const GroupedRelease out = ReleaseGrouped(g, kMuOne, rel, s);
    const GroupedNoise noise = GroupedNoiseFor(4, kMuOne, rel);
    const GroupedSums sums = ComputeGroupedSums(g);
    RngStream replay = MakeStream(3, 0);
    for (std::size_t j = 0; j < 3; ++j) {
      const double eta = std::sqrt(noise.shared_variance) *
                         replay.NextStandardNormal();
      for (std::size_t k = 0; k < 4; ++k) {
        const double z = std::sqrt(noise.independent_variance) *
                         replay.NextStandardNormal();
        EXPECT_EQ(out.estimates(j, k), sums.sums(j, k) + eta + z);
      }
      EXPECT_EQ(out.group_counts[j], sums.counts[j] + 2.0 * eta);
    }
  }
}

TEST(ReleaseGroupedTest, EmptyRowsAreNoised) {
  RngStream s = MakeStream(3, 0);
  const GroupedRelease out =
      ReleaseGrouped(Example(), kMuOne, NeighborRelation::kAddRemove, s);
  EXPECT_NE(out.group_counts[1], 0.0);
  EXPECT_NE(out.estimates(1, 0), 0.0);
}

TEST(ReleaseGroupedTest, NoiselessLimit) {
  const GroupedDataset g = Example();
  const GroupedSums sums = ComputeGroupedSums(g);
  for (NeighborRelation rel :
       {NeighborRelation::kAddRemove, NeighborRelation::kReplacement}) {
    RngStream s = MakeStream(8, 0);
    const GroupedRelease out =
        ReleaseGrouped(g, PrivacyBudget::FromMu(1e6), rel, s);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_NEAR(out.group_counts[j], sums.counts[j], 1e-3);
      for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(out.estimates(j, k), sums.sums(j, k), 1e-3);
      }
    }
  }
}

TEST(ReleaseGroupedTest, SingleGroupIsTheFlatMechanism) {
  // Same data as one group; the sampling order coincides, so the outputs are
  // identical, not just equal in law.
  const Dataset flat = LoadDataset("0.5,1,0\n0,0.25,1\n1,1,1\n");
  const GroupedDataset grouped =
      LoadGroupedDataset("1,0.5,1,0\n1,0,0.25,1\n1,1,1,1\n");
  RngStream a = MakeStream(50, 0);
  RngStream b = MakeStream(50, 0);
  const ReleaseOutput f = CorrelatedGaussian(flat, kMuOne, a);
  const GroupedRelease g =
      ReleaseGrouped(grouped, kMuOne, NeighborRelation::kAddRemove, b);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(g.estimates(0, k), f.estimates[k]);
  EXPECT_EQ(g.group_counts[0], f.n_estimate);
}

TEST(ReleaseGroupedTest, MonteCarloRowStructure) {
  constexpr std::size_t kRuns = 60000;
  const GroupedDataset g = LoadGroupedDataset("1,1,0,1\n2,0.5,0.5,0.5\n", 2);
  for (NeighborRelation rel :
       {NeighborRelation::kAddRemove, NeighborRelation::kReplacement}) {
    const GroupedNoise noise = GroupedNoiseFor(3, kMuOne, rel);
    const double total = noise.shared_variance + noise.independent_variance;
    RngStream s = MakeStream(61, static_cast<std::uint64_t>(rel));
    std::vector<std::vector<double>> samples;
    for (std::size_t r = 0; r < kRuns; ++r) {
      const GroupedRelease out = ReleaseGrouped(g, kMuOne, rel, s);
      samples.push_back({out.estimates(0, 0), out.estimates(0, 2),
                         out.estimates(1, 0), out.group_counts[0]});
    }
    const auto m = SampleMoments(samples);
    const double v = noise.shared_variance;
    EXPECT_NEAR(m.cov[0][0], total, 5 * CovarianceSe(total, total, total, kRuns));
    EXPECT_NEAR(m.cov[0][1], v, 5 * CovarianceSe(total, total, v, kRuns));
    EXPECT_NEAR(m.cov[0][2], 0.0, 5 * CovarianceSe(total, total, 0, kRuns));
    EXPECT_NEAR(m.cov[3][3], 4 * v, 5 * CovarianceSe(4 * v, 4 * v, 4 * v, kRuns));
    EXPECT_NEAR(m.mean[0], 1.0, 5 * std::sqrt(total / kRuns));
    EXPECT_NEAR(m.mean[3], 1.0, 5 * std::sqrt(4 * v / kRuns));
  }
}

TEST(ReleaseGroupedStandardTest, VarianceByRelation) {
  const GroupedDataset g =
      GroupedDataset::Create(2, 1000, {{1, std::vector<double>(1000, 1.0)}});
  const GroupedSums sums = ComputeGroupedSums(g);
  for (auto [rel, variance] :
       {std::pair{NeighborRelation::kAddRemove, 1000.0},
        std::pair{NeighborRelation::kReplacement, 2000.0}}) {
    RngStream s = MakeStream(13, 0);
    const Matrix out = ReleaseGroupedStandard(g, kMuOne, rel, s);
    RngStream replay = MakeStream(13, 0);
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 1000; ++k) {
        EXPECT_EQ(out(j, k), sums.sums(j, k) + std::sqrt(variance) *
                                                   replay.NextStandardNormal());
      }
    }
  }
}

TEST(GroupedComparisonTest, ReplacementCrossoverAtFour) {
  // Correlated per-entry variance (d + 4)/mu^2 against the baseline 2d/mu^2.
  auto correlated = [](std::size_t d) {
    const GroupedNoise n = GroupedNoiseFor(d, kMuOne, NeighborRelation::kReplacement);
    return n.shared_variance + n.independent_variance;
  };
  EXPECT_DOUBLE_EQ(correlated(4), 8.0);
  EXPECT_DOUBLE_EQ(correlated(5), 9.0);
  EXPECT_LT(correlated(5), 10.0);
  for (std::size_t d = 4; d <= 2000; ++d) {
    EXPECT_LE(correlated(d), 2.0 * d);
    if (d > 4) EXPECT_LT(correlated(d), 2.0 * d);
  }
}

}  // namespace
}  // namespace corrgauss
