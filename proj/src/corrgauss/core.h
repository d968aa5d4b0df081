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

#ifndef CORRGAUSS_CORE_H_
#define CORRGAUSS_CORE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrgauss/matrix.h"

namespace corrgauss {

// Neighboring relation between datasets: add/remove one point, or replace
// one point with another.
enum class NeighborRelation { kAddRemove, kReplacement };

// Answers to d queries, f(X) = sum of rows.
struct QueryVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  friend bool operator==(const QueryVector&, const QueryVector&) = default;
};

// n rows of d values, every value in [0, 1]. Immutable once built; n may be
// zero. Duplicate rows are kept (the dataset is a multiset).
class Dataset {
 public:
  // Validates shape and range. `values` is row-major with `dimension`
  // entries per row.
  static Dataset Create(std::size_t dimension, std::vector<double> values);
  static Dataset FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return values_.size() / dimension_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dimension_, dimension_};
  }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Dataset(std::size_t dimension, std::vector<double> values)
      : dimension_(dimension), values_(std::move(values)) {}

  std::size_t dimension_;
  std::vector<double> values_;
};

struct GroupedPoint {
  std::size_t group;  // 1-based, in [1, m]
  std::vector<double> values;

  bool IsZero() const;
  friend bool operator==(const GroupedPoint&, const GroupedPoint&) = default;
};

// Points in [0,1]^{m x d} that are nonzero in at most one row. Each point is
// stored as its group index plus that row's d values.
class GroupedDataset {
 public:
  static GroupedDataset Create(std::size_t groups, std::size_t dimension,
                               std::vector<GroupedPoint> points);

  std::size_t groups() const { return groups_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<GroupedPoint>& points() const { return points_; }

 private:
  GroupedDataset(std::size_t groups, std::size_t dimension,
                 std::vector<GroupedPoint> points)
      : groups_(groups), dimension_(dimension), points_(std::move(points)) {}

  std::size_t groups_;
  std::size_t dimension_;
  std::vector<GroupedPoint> points_;
};

struct GroupedSums {
  Matrix sums;                 // m x d
  std::vector<double> counts;  // points with a nonzero row, per group
};

// Parses dense CSV: one row per line, d comma-separated decimals, no header.
// d is inferred from the first nonempty line unless `dimension` is given;
// an input with no rows is only accepted when `dimension` is given.
Dataset LoadDataset(std::string_view text,
                    std::optional<std::size_t> dimension = std::nullopt);

// Parses sparse CSV lines "j,v1,...,vd". m defaults to the largest j seen,
// d to the arity minus one.
GroupedDataset LoadGroupedDataset(
    std::string_view text, std::optional<std::size_t> groups = std::nullopt,
    std::optional<std::size_t> dimension = std::nullopt);

// Dense CSV with 17 significant digits, so LoadDataset(FormatDataset(x)) == x.
std::string FormatDataset(const Dataset& dataset);

QueryVector SumQueries(const Dataset& dataset);

GroupedSums ComputeGroupedSums(const GroupedDataset& dataset);

}  // namespace corrgauss

#endif  // CORRGAUSS_CORE_H_
