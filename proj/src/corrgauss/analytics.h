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

#ifndef CORRGAUSS_ANALYTICS_H_
#define CORRGAUSS_ANALYTICS_H_

#include <cstddef>

#include "corrgauss/core.h"
#include "corrgauss/matrix.h"

namespace corrgauss {

// Closed-form noise of the tunable correlated mechanism with parameter C:
//   A = (d / C^2 + 1) / mu^2      variance of the size estimate
//   B = (d + C^2) / mu^2          variance of each embedded coordinate
// Each query estimate has variance (A + B) / 4.
struct NoiseProfile {
  std::size_t d;
  double c;
  double mu;
  double a;
  double b;
  double per_query_variance;
  double n_variance;
};

NoiseProfile ComputeNoiseProfile(std::size_t d, double c, double mu);

// d^{1/4}, the C minimizing per-query variance.
double OptimalC(std::size_t d);

// (d+1) x (d+1) covariance of (estimates, n_estimate):
// (A+B)/4 on the query diagonal, A/4 between queries, A/2 between a query
// and the size estimate, A in the corner.
Matrix CovarianceMatrixFor(std::size_t d, double c, double mu);

// sqrt(d + C^2).
double EmbeddedSensitivity(std::size_t d, double c);

enum class QueryLayout { kFlat, kGrouped };

// sqrt(2d) for grouped data under replacement, sqrt(d) otherwise.
double FlatSensitivity(std::size_t d, NeighborRelation relation,
                       QueryLayout layout = QueryLayout::kFlat);

// Standard normal CDF, Phi(x) = erfc(-x / sqrt 2) / 2.
double StandardNormalCdf(double x);

// rho = mu^2 / 2.
double GdpToZcdp(double mu);

// Smallest delta such that mu-GDP implies (epsilon, delta)-DP:
//   Phi(-eps/mu + mu/2) - e^eps Phi(-eps/mu - mu/2).
double GdpToApproxDp(double mu, double epsilon);

// Inverse of GdpToApproxDp in mu, by bisection on [1e-6, 1e3]. Throws
// kOutOfBracket when delta is not attained inside that range.
double CalibrateMu(double epsilon, double delta);

inline constexpr double kCalibrateMuLower = 1e-6;
inline constexpr double kCalibrateMuUpper = 1e3;

}  // namespace corrgauss

#endif  // CORRGAUSS_ANALYTICS_H_
