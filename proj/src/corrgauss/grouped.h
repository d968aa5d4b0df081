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

#ifndef CORRGAUSS_GROUPED_H_
#define CORRGAUSS_GROUPED_H_

#include <vector>

#include "corrgauss/core.h"
#include "corrgauss/mechanisms.h"
#include "corrgauss/randomness.h"

namespace corrgauss {

struct GroupedRelease {
  Matrix estimates;                  // m x d
  std::vector<double> group_counts;  // m
};

// Per-row noise variances used by ReleaseGrouped.
struct GroupedNoise {
  double shared_variance;       // eta_j
  double independent_variance;  // z_{j,k}
};

GroupedNoise GroupedNoiseFor(std::size_t dimension, PrivacyBudget budget,
                             NeighborRelation relation);

// Correlated mechanism for points confined to one of m rows. For each row j
// in order: draw eta_j, then z_{j,1..d}. Entry (j,k) is sum_{j,k} + eta_j +
// z_{j,k}; the row count estimate is count_j + 2 eta_j. Rows with no points
// are noised like any other.
//
//   add/remove:  eta_j ~ N(0, (sqrt d + 1)/(4 mu^2)), z ~ N(0, (d + sqrt d)/(4 mu^2))
//   replacement: eta_j ~ N(0, 4/mu^2),               z ~ N(0, d/mu^2)
GroupedRelease ReleaseGrouped(const GroupedDataset& dataset,
                              PrivacyBudget budget, NeighborRelation relation,
                              RngStream& stream);

// Baseline: i.i.d. N(0, d/mu^2) (add/remove) or N(0, 2d/mu^2) (replacement)
// on every entry of the grouped sums, row-major order.
Matrix ReleaseGroupedStandard(const GroupedDataset& dataset,
                              PrivacyBudget budget, NeighborRelation relation,
                              RngStream& stream);

}  // namespace corrgauss

#endif  // CORRGAUSS_GROUPED_H_
