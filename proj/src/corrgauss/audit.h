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

#ifndef CORRGAUSS_AUDIT_H_
#define CORRGAUSS_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corrgauss/core.h"
#include "corrgauss/matrix.h"
#include "corrgauss/randomness.h"

namespace corrgauss {

struct AuditCheck {
  std::string name;
  double expected;
  double observed;
  double tolerance;
  bool pass;
};

class AuditReport {
 public:
  // pass is |expected - observed| <= tolerance, computed here.
  void Add(std::string name, double expected, double observed,
           double tolerance);
  void Append(const AuditReport& other);

  const std::vector<AuditCheck>& checks() const { return checks_; }
  bool AllPassed() const;
  std::size_t FailureCount() const;

  // One line per check:
  //   PASS|FAIL <name> expected=<e> observed=<o> tol=<t>
  std::string Format() const;

 private:
  std::vector<AuditCheck> checks_;
};

inline constexpr std::size_t kMaxAuditDimension = 12;

// Largest ||EmbedPoint(x, c)||_2 over the 2^d corners x in {0,1}^d. A norm
// is convex in each coordinate, so on [0,1]^d the maximum sits at a corner.
double BruteForceSensitivity(std::size_t d, double c);

struct MahalanobisResult {
  double max_form;     // max over corners of v^T Sigma^{-1} v, times mu^2
  double zeros_form;   // at x = 0^d
  double ones_form;    // at x = 1^d
  double max_remove;   // same maximum over remove vectors -(x, 1)
};

// Privacy audit of the closed-form covariance. For every corner x the add
// neighbor moves the output by v = (x, 1); the mechanism with covariance
// Sigma spends sqrt(v^T Sigma^{-1} v) of GDP budget on it. The returned
// values are that quantity squared over mu^2, so 1 means the budget is
// exactly saturated and anything above 1 is an over-spend. Solves with a
// pivoted LDL^T factorization.
MahalanobisResult MahalanobisAuditDetail(std::size_t d, double c, double mu);
double MahalanobisAudit(std::size_t d, double c, double mu);

// v^T Sigma^{-1} v for an arbitrary offset, mu^2-normalized as above.
double MahalanobisForm(std::size_t d, double c, double mu,
                       const std::vector<double>& offset);

// One release, flattened.
using Sampler = std::function<std::vector<double>(RngStream&)>;

struct CovarianceEstimate {
  std::vector<double> mean;
  Matrix covariance;  // unbiased, runs - 1 normalization
  std::size_t runs = 0;
};

// Runs are processed in fixed chunks of kCovarianceChunk; chunk k draws from
// stream.Derive(k) and chunks are merged in index order, so the result is
// bitwise the same for any worker count. workers = 0 picks the hardware
// concurrency.
inline constexpr std::size_t kCovarianceChunk = 4096;
CovarianceEstimate EmpiricalCovariance(const Sampler& sampler,
                                       std::size_t runs,
                                       const RngStream& stream,
                                       unsigned workers = 1);

// 8 rows, entry (i, j) = (i + j) mod 2.
Dataset AuditDataset(std::size_t d);

struct EquivalenceOptions {
  // C for the embedded pipeline. Defaults to d^{1/4}; anything else is a
  // sabotage control and should fail.
  std::optional<double> embedded_c;
  double sigma_multiplier = 5.0;
  unsigned workers = 1;
  std::string label;  // appended to check names
};

// Compares the direct correlated mechanism (pipeline A) and the embedded
// release followed by the inverse map (pipeline B) against the closed-form
// covariance at C = d^{1/4}: every covariance entry and every mean, within
// sigma_multiplier standard errors.
AuditReport EquivalenceTest(const Dataset& dataset, double mu,
                            std::size_t runs, const RngStream& stream,
                            const EquivalenceOptions& options = {});

struct AuditSuiteOptions {
  std::size_t max_d = kMaxAuditDimension;
  std::size_t runs = 200000;
  std::uint64_t seed = 42;
  bool fast = false;
  unsigned workers = 1;
};

// Everything cmd_audit runs: exact values, sensitivity oracle, Mahalanobis
// audit for every d up to max_d, closed-form covariance entries and the
// Monte-Carlo equivalence test.
AuditReport RunAuditSuite(const AuditSuiteOptions& options);

}  // namespace corrgauss

#endif  // CORRGAUSS_AUDIT_H_
