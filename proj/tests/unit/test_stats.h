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

#ifndef CORRGAUSS_TESTS_UNIT_TEST_STATS_H_
#define CORRGAUSS_TESTS_UNIT_TEST_STATS_H_

// Plain two-pass moment estimators for Monte-Carlo tests. Kept separate from
// the library's chunked estimator so the two can check each other.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace corrgauss::testing {

struct Moments {
  std::vector<double> mean;
  std::vector<std::vector<double>> cov;
};

inline Moments SampleMoments(const std::vector<std::vector<double>>& samples) {
  const std::size_t n = samples.size();
  const std::size_t dim = samples.front().size();
  Moments m{std::vector<double>(dim, 0.0),
            std::vector<std::vector<double>>(dim, std::vector<double>(dim))};
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < dim; ++i) m.mean[i] += s[i];
  }
  for (double& v : m.mean) v /= static_cast<double>(n);
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        m.cov[i][j] += (s[i] - m.mean[i]) * (s[j] - m.mean[j]);
      }
    }
  }
  for (auto& row : m.cov) {
    for (double& v : row) v /= static_cast<double>(n - 1);
  }
  return m;
}

inline std::vector<double> Vec(std::span<const double> s) {
  return {s.begin(), s.end()};
}

// Standard error of a Gaussian sample covariance entry.
inline double CovarianceSe(double sii, double sjj, double sij,
                           std::size_t runs) {
  return std::sqrt((sii * sjj + sij * sij) / static_cast<double>(runs - 1));
}

}  // namespace corrgauss::testing

#endif  // CORRGAUSS_TESTS_UNIT_TEST_STATS_H_
