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

namespace corrgauss {

GroupedNoise GroupedNoiseFor(std::size_t dimension, PrivacyBudget budget,
                             NeighborRelation relation) {
  const double d = static_cast<double>(dimension);
  const double inv = budget.inverse_mu_squared();
  if (relation == NeighborRelation::kAddRemove) {
    const double root_d = std::sqrt(d);
    return {(root_d + 1.0) / 4.0 * inv, (d + root_d) / 4.0 * inv};
  }
  // Replacement: a point may leave one row and enter another.
  return {4.0 * inv, d * inv};
}

GroupedRelease ReleaseGrouped(const GroupedDataset& dataset,
                              PrivacyBudget budget, NeighborRelation relation,
                              RngStream& stream) {
  const GroupedNoise noise =
      GroupedNoiseFor(dataset.dimension(), budget, relation);
  GroupedSums sums = ComputeGroupedSums(dataset);
  GroupedRelease out{std::move(sums.sums), std::move(sums.counts)};
  for (std::size_t j = 0; j < dataset.groups(); ++j) {
    const double eta = stream.Gaussian(0.0, noise.shared_variance);
    for (double& v : out.estimates.row(j)) {
      v = v + eta + stream.Gaussian(0.0, noise.independent_variance);
    }
    out.group_counts[j] += 2.0 * eta;
  }
  return out;
}

Matrix ReleaseGroupedStandard(const GroupedDataset& dataset,
                              PrivacyBudget budget, NeighborRelation relation,
                              RngStream& stream) {
  const double d = static_cast<double>(dataset.dimension());
  const double variance = (relation == NeighborRelation::kAddRemove ? d
                                                                    : 2.0 * d) *
                          budget.inverse_mu_squared();
  Matrix out = ComputeGroupedSums(dataset).sums;
  for (std::size_t j = 0; j < out.rows(); ++j) {
    for (double& v : out.row(j)) v = stream.Gaussian(v, variance);
  }
  return out;
}

}  // namespace corrgauss
