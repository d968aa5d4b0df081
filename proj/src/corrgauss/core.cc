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

#include "corrgauss/core.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <system_error>

#include "corrgauss/error.h"

namespace corrgauss {
namespace {

std::string LineTag(std::size_t line) {
  return "line " + std::to_string(line);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double ParseValue(std::string_view token, std::size_t line) {
  token = Trim(token);
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::kParseError,
                LineTag(line) + ": not a number: '" + std::string(token) + "'");
  }
  return value;
}

void CheckUnitRange(double value, std::size_t line) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange,
                LineTag(line) + ": value " + std::to_string(value) +
                    " outside [0, 1]");
  }
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Calls `fn(line_number, line)` for every line with content.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_number = 0;
  while (!text.empty()) {
    ++line_number;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (Trim(line).empty()) continue;
    fn(line_number, line);
  }
}

}  // namespace

Dataset Dataset::Create(std::size_t dimension, std::vector<double> values) {
  if (dimension == 0) {
    throw Error(ErrorCode::kInvalidArgument, "dimension must be at least 1");
  }
  if (values.size() % dimension != 0) {
    throw Error(ErrorCode::kRaggedRow,
                "value count is not a multiple of the dimension");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    CheckUnitRange(values[i], i / dimension + 1);
  }
  return Dataset(dimension, std::move(values));
}

Dataset Dataset::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "cannot infer dimension from zero rows");
  }
  const std::size_t d = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw Error(ErrorCode::kRaggedRow,
                  LineTag(i + 1) + ": expected " + std::to_string(d) +
                      " fields, got " + std::to_string(rows[i].size()));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return Create(d, std::move(values));
}

bool GroupedPoint::IsZero() const {
  for (double v : values) {
    if (v != 0.0) return false;
  }
  return true;
}

GroupedDataset GroupedDataset::Create(std::size_t groups,
                                      std::size_t dimension,
                                      std::vector<GroupedPoint> points) {
  if (groups == 0 || dimension == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "group count and dimension must be at least 1");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const GroupedPoint& p = points[i];
    if (p.group < 1 || p.group > groups) {
      throw Error(ErrorCode::kBadGroupIndex,
                  LineTag(i + 1) + ": group index " + std::to_string(p.group) +
                      " outside [1, " + std::to_string(groups) + "]");
    }
    if (p.values.size() != dimension) {
      throw Error(ErrorCode::kRaggedRow,
                  LineTag(i + 1) + ": expected " + std::to_string(dimension) +
                      " values, got " + std::to_string(p.values.size()));
    }
    for (double v : p.values) CheckUnitRange(v, i + 1);
  }
  return GroupedDataset(groups, dimension, std::move(points));
}

Dataset LoadDataset(std::string_view text,
                    std::optional<std::size_t> dimension) {
  std::optional<std::size_t> d = dimension;
  std::vector<double> values;
  ForEachLine(text, [&](std::size_t line_number, std::string_view line) {
    std::vector<std::string_view> fields = SplitFields(line);
    if (!d) d = fields.size();
    if (fields.size() != *d) {
      throw Error(ErrorCode::kRaggedRow,
                  LineTag(line_number) + ": expected " + std::to_string(*d) +
                      " fields, got " + std::to_string(fields.size()));
    }
    for (std::string_view field : fields) {
      double v = ParseValue(field, line_number);
      CheckUnitRange(v, line_number);
      values.push_back(v);
    }
  });
  if (!d) {
    throw Error(ErrorCode::kEmptyInput,
                "input has no rows and no dimension was given");
  }
  return Dataset::Create(*d, std::move(values));
}

GroupedDataset LoadGroupedDataset(std::string_view text,
                                  std::optional<std::size_t> groups,
                                  std::optional<std::size_t> dimension) {
  std::optional<std::size_t> d = dimension;
  std::size_t max_group = 0;
  std::vector<GroupedPoint> points;
  ForEachLine(text, [&](std::size_t line_number, std::string_view line) {
    std::vector<std::string_view> fields = SplitFields(line);
    if (fields.size() < 2) {
      throw Error(ErrorCode::kRaggedRow,
                  LineTag(line_number) + ": expected a group index and values");
    }
    if (!d) d = fields.size() - 1;
    if (fields.size() - 1 != *d) {
      throw Error(ErrorCode::kRaggedRow,
                  LineTag(line_number) + ": expected " +
                      std::to_string(*d + 1) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::string_view index_token = Trim(fields[0]);
    long long group = 0;
    const char* end = index_token.data() + index_token.size();
    auto [ptr, ec] = std::from_chars(index_token.data(), end, group);
    if (index_token.empty() || ec != std::errc() || ptr != end) {
      throw Error(ErrorCode::kParseError,
                  LineTag(line_number) + ": not a group index: '" +
                      std::string(index_token) + "'");
    }
    if (group < 1 || (groups && static_cast<std::size_t>(group) > *groups)) {
      throw Error(ErrorCode::kBadGroupIndex,
                  LineTag(line_number) + ": group index " +
                      std::to_string(group) + " out of range");
    }
    GroupedPoint point{static_cast<std::size_t>(group), {}};
    point.values.reserve(*d);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      double v = ParseValue(fields[k], line_number);
      CheckUnitRange(v, line_number);
      point.values.push_back(v);
    }
    max_group = std::max(max_group, point.group);
    points.push_back(std::move(point));
  });
  if (!d || (!groups && max_group == 0)) {
    throw Error(ErrorCode::kEmptyInput,
                "input has no points and group count or dimension is missing");
  }
  return GroupedDataset::Create(groups.value_or(max_group), *d,
                                std::move(points));
}

std::string FormatDataset(const Dataset& dataset) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    std::span<const double> row = dataset.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

QueryVector SumQueries(const Dataset& dataset) {
  QueryVector f{std::vector<double>(dataset.dimension(), 0.0)};
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    std::span<const double> row = dataset.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) f.values[j] += row[j];
  }
  return f;
}

GroupedSums ComputeGroupedSums(const GroupedDataset& dataset) {
  GroupedSums out{Matrix(dataset.groups(), dataset.dimension()),
                  std::vector<double>(dataset.groups(), 0.0)};
  for (const GroupedPoint& p : dataset.points()) {
    if (p.IsZero()) continue;
    const std::size_t j = p.group - 1;
    std::span<double> row = out.sums.row(j);
    for (std::size_t k = 0; k < row.size(); ++k) row[k] += p.values[k];
    out.counts[j] += 1.0;
  }
  return out;
}

}  // namespace corrgauss
