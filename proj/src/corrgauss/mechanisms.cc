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

#include "corrgauss/mechanisms.h"

#include <cmath>
#include <string>

#include "corrgauss/error.h"

namespace corrgauss {
namespace {

#ifdef CORRGAUSS_INJECT_Z_VARIANCE_FAULT
// Test-only build: inflates the independent noise so the audit can prove it
// notices.
constexpr double kZVarianceScale = 1.1;
#else
constexpr double kZVarianceScale = 1.0;
#endif

void CheckC(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kNonPositiveC, "C must be positive and finite");
  }
}

}  // namespace

PrivacyBudget PrivacyBudget::FromMu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::kNonPositiveInput, "mu must be positive and finite");
  }
  return PrivacyBudget(mu);
}

QueryVector StandardGaussian(const QueryVector& f, double sensitivity,
                             PrivacyBudget budget, RngStream& stream) {
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw Error(ErrorCode::kNonPositiveSensitivity,
                "sensitivity must be positive and finite");
  }
  const double variance =
      sensitivity * sensitivity * budget.inverse_mu_squared();
  QueryVector out = f;
  for (double& v : out.values) v = stream.Gaussian(v, variance);
  return out;
}

ReleaseOutput CorrelatedGaussian(const Dataset& dataset, PrivacyBudget budget,
                                 RngStream& stream) {
  const double d = static_cast<double>(dataset.dimension());
  const double root_d = std::sqrt(d);
  const double inv = budget.inverse_mu_squared();
  const double eta_variance = (root_d + 1.0) / 4.0 * inv;
  const double z_variance = (d + root_d) / 4.0 * inv * kZVarianceScale;

  const QueryVector f = SumQueries(dataset);
  const double eta = stream.Gaussian(0.0, eta_variance);
  ReleaseOutput out;
  out.estimates.reserve(f.size());
  for (double value : f.values) {
    out.estimates.push_back(value + eta + stream.Gaussian(0.0, z_variance));
  }
  out.n_estimate = static_cast<double>(dataset.size()) + 2.0 * eta;
  return out;
}

ReleaseOutput CorrelatedGaussianTunable(const Dataset& dataset,
                                        PrivacyBudget budget, double c,
                                        RngStream& stream) {
  return PostprocessHInverse(EmbeddedRelease(dataset, budget, c, stream));
}

std::vector<double> EmbedPoint(std::span<const double> x, double c) {
  CheckC(c);
  std::vector<double> out;
  out.reserve(x.size() + 1);
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kOutOfRange,
                  "value " + std::to_string(v) + " outside [0, 1]");
    }
    out.push_back(2.0 * v - 1.0);
  }
  out.push_back(c);
  return out;
}

EmbeddedVector EmbeddedRelease(const Dataset& dataset, PrivacyBudget budget,
                               double c, RngStream& stream) {
  CheckC(c);
  const std::size_t d = dataset.dimension();
  const double variance =
      (static_cast<double>(d) + c * c) * budget.inverse_mu_squared();

  EmbeddedVector y{std::vector<double>(d + 1, 0.0), c};
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const std::vector<double> point = EmbedPoint(dataset.row(i), c);
    for (std::size_t j = 0; j <= d; ++j) y.values[j] += point[j];
  }
  for (double& v : y.values) v = stream.Gaussian(v, variance);
  return y;
}

ReleaseOutput PostprocessHInverse(const EmbeddedVector& y) {
  CheckC(y.c_param);
  if (y.values.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedded vector must have length d + 1 >= 2");
  }
  const std::size_t d = y.values.size() - 1;
  const double last = y.values[d];
  ReleaseOutput out;
  out.n_estimate = last / y.c_param;
  out.estimates.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    out.estimates.push_back(y.values[i] / 2.0 + last / (2.0 * y.c_param));
  }
  return out;
}

EmbeddedVector PostprocessH(const ReleaseOutput& out, double c) {
  CheckC(c);
  EmbeddedVector y{{}, c};
  y.values.reserve(out.estimates.size() + 1);
  for (double x : out.estimates) y.values.push_back(2.0 * x - out.n_estimate);
  y.values.push_back(c * out.n_estimate);
  return y;
}

QueryVector KnownNRelease(const Dataset& dataset, double n_estimate,
                          PrivacyBudget budget, RngStream& stream) {
  if (!std::isfinite(n_estimate)) {
    throw Error(ErrorCode::kInvalidArgument, "size estimate must be finite");
  }
  const double d = static_cast<double>(dataset.dimension());
  const double variance = d / 4.0 * budget.inverse_mu_squared();
  const double shift = (n_estimate - static_cast<double>(dataset.size())) / 2.0;
  QueryVector out = SumQueries(dataset);
  for (double& v : out.values) v = stream.Gaussian(v + shift, variance);
  return out;
}

}  // namespace corrgauss
