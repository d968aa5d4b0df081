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

#include "corrgauss/analytics.h"

#include <algorithm>
#include <cmath>

#include "corrgauss/error.h"

namespace corrgauss {
namespace {

void CheckPositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kNonPositiveInput,
                std::string(name) + " must be positive and finite");
  }
}

void CheckDimension(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::kNonPositiveInput, "d must be >= 1");
}

}  // namespace

NoiseProfile ComputeNoiseProfile(std::size_t d, double c, double mu) {
  CheckDimension(d);
  CheckPositive(c, "C");
  CheckPositive(mu, "mu");
  const double dd = static_cast<double>(d);
  const double inv = 1.0 / (mu * mu);
  const double a = (dd / (c * c) + 1.0) * inv;
  const double b = (dd + c * c) * inv;
  return {d, c, mu, a, b, (a + b) / 4.0, a};
}

double OptimalC(std::size_t d) {
  CheckDimension(d);
  return std::sqrt(std::sqrt(static_cast<double>(d)));
}

Matrix CovarianceMatrixFor(std::size_t d, double c, double mu) {
  const NoiseProfile p = ComputeNoiseProfile(d, c, mu);
  Matrix sigma(d + 1, d + 1, p.a / 4.0);
  for (std::size_t i = 0; i < d; ++i) {
    sigma(i, i) = p.per_query_variance;
    sigma(i, d) = p.a / 2.0;
    sigma(d, i) = p.a / 2.0;
  }
  sigma(d, d) = p.a;
  return sigma;
}

double EmbeddedSensitivity(std::size_t d, double c) {
  CheckDimension(d);
  CheckPositive(c, "C");
  return std::sqrt(static_cast<double>(d) + c * c);
}

double FlatSensitivity(std::size_t d, NeighborRelation relation,
                       QueryLayout layout) {
  CheckDimension(d);
  const double dd = static_cast<double>(d);
  if (relation == NeighborRelation::kReplacement &&
      layout == QueryLayout::kGrouped) {
    return std::sqrt(2.0 * dd);
  }
  return std::sqrt(dd);
}

double StandardNormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double GdpToZcdp(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::kNonPositiveInput, "mu must be finite and >= 0");
  }
  return mu * mu / 2.0;
}

double GdpToApproxDp(double mu, double epsilon) {
  CheckPositive(mu, "mu");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be finite and >= 0");
  }
  const double ratio = epsilon / mu;
  // e^eps * Phi(.) overflows to inf * 0 for large eps; go through logs.
  const double tail = StandardNormalCdf(-ratio - mu / 2.0);
  const double scaled =
      tail > 0.0 ? std::exp(epsilon + std::log(tail)) : 0.0;
  const double delta = StandardNormalCdf(-ratio + mu / 2.0) - scaled;
  return std::clamp(delta, 0.0, 1.0);
}

double CalibrateMu(double epsilon, double delta) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be finite and >= 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  double lo = kCalibrateMuLower;
  double hi = kCalibrateMuUpper;
  if (GdpToApproxDp(lo, epsilon) > delta || GdpToApproxDp(hi, epsilon) < delta) {
    throw Error(ErrorCode::kOutOfBracket,
                "delta not attainable for mu in [1e-6, 1e3]");
  }
  const double tolerance = 1e-12 * std::max(delta, 1e-6);
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double value = GdpToApproxDp(mid, epsilon);
    if (std::abs(value - delta) <= tolerance) break;
    if (value < delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace corrgauss
