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

#ifndef CORRGAUSS_MECHANISMS_H_
#define CORRGAUSS_MECHANISMS_H_

#include <span>
#include <vector>

#include "corrgauss/core.h"
#include "corrgauss/randomness.h"

namespace corrgauss {

// Gaussian differential privacy parameter mu. Always positive and finite.
class PrivacyBudget {
 public:
  static PrivacyBudget FromMu(double mu);

  double mu() const { return mu_; }
  double inverse_mu_squared() const { return 1.0 / (mu_ * mu_); }

 private:
  explicit PrivacyBudget(double mu) : mu_(mu) {}
  double mu_;
};

struct ReleaseOutput {
  std::vector<double> estimates;  // noisy f(X)
  double n_estimate = 0.0;        // noisy n
};

// Noisy release of the embedded sums g(X), length d + 1, with the C that
// produced it.
struct EmbeddedVector {
  std::vector<double> values;
  double c_param = 0.0;
};

// Returns f + Z with Z_i ~ N(0, sensitivity^2 / mu^2) i.i.d.
QueryVector StandardGaussian(const QueryVector& f, double sensitivity,
                             PrivacyBudget budget, RngStream& stream);

// Correlated Gaussian mechanism under add/remove. Draws the shared term
// eta ~ N(0, (sqrt d + 1) / (4 mu^2)) first, then z_1..z_d i.i.d.
// N(0, (d + sqrt d) / (4 mu^2)). Query i is f_i + eta + z_i and the size
// estimate is n + 2 eta.
ReleaseOutput CorrelatedGaussian(const Dataset& dataset, PrivacyBudget budget,
                                 RngStream& stream);

// Same mechanism with the noise split set by `c`: runs EmbeddedRelease and
// inverts the embedding. c = d^{1/4} gives CorrelatedGaussian's law.
ReleaseOutput CorrelatedGaussianTunable(const Dataset& dataset,
                                        PrivacyBudget budget, double c,
                                        RngStream& stream);

// (2 x_1 - 1, ..., 2 x_d - 1, c).
std::vector<double> EmbedPoint(std::span<const double> x, double c);

// g(X) + Z with g the sum of embedded points and Z_i ~ N(0, (d + c^2)/mu^2)
// i.i.d. over all d + 1 coordinates.
EmbeddedVector EmbeddedRelease(const Dataset& dataset, PrivacyBudget budget,
                               double c, RngStream& stream);

// Deterministic maps between the two output representations.
ReleaseOutput PostprocessHInverse(const EmbeddedVector& y);
EmbeddedVector PostprocessH(const ReleaseOutput& out, double c);

// Release given an externally obtained size estimate: f - n/2 + n_hat/2 + Z,
// Z_i ~ N(0, d / (4 mu^2)). The caller is responsible for the privacy of
// `n_estimate`.
QueryVector KnownNRelease(const Dataset& dataset, double n_estimate,
                          PrivacyBudget budget, RngStream& stream);

}  // namespace corrgauss

#endif  // CORRGAUSS_MECHANISMS_H_
