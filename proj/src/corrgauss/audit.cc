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

#include "corrgauss/audit.h"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "corrgauss/analytics.h"
#include "corrgauss/error.h"
#include "corrgauss/mechanisms.h"

namespace corrgauss {
namespace {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CheckAuditDimension(std::size_t d) {
  if (d == 0 || d > kMaxAuditDimension) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "audit enumeration needs 1 <= d <= 12, got d = " +
                    std::to_string(d));
  }
}

// Corner x in {0,1}^d encoded by the bits of `mask`.
std::vector<double> Corner(std::size_t d, std::uint32_t mask) {
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = (mask >> j) & 1u ? 1.0 : 0.0;
  return x;
}

class CovarianceSolver {
 public:
  CovarianceSolver(std::size_t d, double c, double mu) : mu_(mu) {
    const Matrix sigma = CovarianceMatrixFor(d, c, mu);
    Eigen::MatrixXd k(d + 1, d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      for (std::size_t j = 0; j <= d; ++j) k(i, j) = sigma(i, j);
    }
    ldlt_.compute(k);
    const double scale = k.diagonal().cwiseAbs().maxCoeff();
    if (ldlt_.info() != Eigen::Success || !ldlt_.isPositive() ||
        ldlt_.vectorD().cwiseAbs().minCoeff() <= 1e-14 * scale) {
      throw Error(ErrorCode::kSingularMatrix,
                  "covariance matrix is not positive definite");
    }
  }

  double Form(const std::vector<double>& v) const {
    Eigen::Map<const Eigen::VectorXd> vec(v.data(),
                                          static_cast<Eigen::Index>(v.size()));
    return vec.dot(ldlt_.solve(vec)) / (mu_ * mu_);
  }

 private:
  double mu_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
};

struct ChunkStats {
  double count = 0.0;
  std::vector<double> mean;
  std::vector<double> m2;  // dim x dim, row-major
};

ChunkStats RunChunk(const Sampler& sampler, std::size_t runs,
                    RngStream stream) {
  ChunkStats stats;
  std::vector<double> delta;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::vector<double> x = sampler(stream);
    const std::size_t dim = x.size();
    if (stats.mean.empty()) {
      stats.mean.assign(dim, 0.0);
      stats.m2.assign(dim * dim, 0.0);
      delta.resize(dim);
    }
    stats.count += 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      delta[i] = x[i] - stats.mean[i];
      stats.mean[i] += delta[i] / stats.count;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const double after = x[i] - stats.mean[i];
      for (std::size_t j = 0; j < dim; ++j) {
        stats.m2[i * dim + j] += after * delta[j];
      }
    }
  }
  return stats;
}

void Merge(ChunkStats& into, const ChunkStats& other) {
  if (other.count == 0.0) return;
  if (into.count == 0.0) {
    into = other;
    return;
  }
  const std::size_t dim = into.mean.size();
  const double total = into.count + other.count;
  const double weight = into.count * other.count / total;
  std::vector<double> delta(dim);
  for (std::size_t i = 0; i < dim; ++i) delta[i] = other.mean[i] - into.mean[i];
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      into.m2[i * dim + j] += other.m2[i * dim + j] + delta[i] * delta[j] * weight;
    }
    into.mean[i] += delta[i] * other.count / total;
  }
  into.count = total;
}

void CheckPipeline(AuditReport& report, const std::string& prefix,
                   const CovarianceEstimate& estimate, const Matrix& sigma,
                   const std::vector<double>& truth, double k) {
  const std::size_t dim = truth.size();
  const double runs = static_cast<double>(estimate.runs);
  for (std::size_t i = 0; i < dim; ++i) {
    report.Add(prefix + ".mean[" + std::to_string(i) + "]", truth[i],
               estimate.mean[i], k * std::sqrt(sigma(i, i) / runs));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double se = std::sqrt(
          (sigma(i, i) * sigma(j, j) + sigma(i, j) * sigma(i, j)) /
          (runs - 1.0));
      report.Add(prefix + ".cov[" + std::to_string(i) + "," +
                     std::to_string(j) + "]",
                 sigma(i, j), estimate.covariance(i, j), k * se);
    }
  }
}

std::vector<double> Flatten(const ReleaseOutput& out) {
  std::vector<double> v = out.estimates;
  v.push_back(out.n_estimate);
  return v;
}

}  // namespace

void AuditReport::Add(std::string name, double expected, double observed,
                      double tolerance) {
  const bool pass = std::abs(expected - observed) <= tolerance;
  checks_.push_back({std::move(name), expected, observed, tolerance, pass});
}

void AuditReport::Append(const AuditReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool AuditReport::AllPassed() const { return FailureCount() == 0; }

std::size_t AuditReport::FailureCount() const {
  return static_cast<std::size_t>(std::count_if(
      checks_.begin(), checks_.end(),
      [](const AuditCheck& c) { return !c.pass; }));
}

std::string AuditReport::Format() const {
  std::string out;
  for (const AuditCheck& c : checks_) {
    out += c.pass ? "PASS " : "FAIL ";
    out += c.name;
    out += " expected=" + FormatDouble(c.expected);
    out += " observed=" + FormatDouble(c.observed);
    out += " tol=" + FormatDouble(c.tolerance);
    out += '\n';
  }
  return out;
}

double BruteForceSensitivity(std::size_t d, double c) {
  CheckAuditDimension(d);
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    const std::vector<double> point = EmbedPoint(Corner(d, mask), c);
    double sq = 0.0;
    for (double v : point) sq += v * v;
    best = std::max(best, std::sqrt(sq));
  }
  return best;
}

MahalanobisResult MahalanobisAuditDetail(std::size_t d, double c, double mu) {
  CheckAuditDimension(d);
  const CovarianceSolver solver(d, c, mu);
  MahalanobisResult result{0.0, 0.0, 0.0, 0.0};
  const std::uint32_t last = (1u << d) - 1u;
  for (std::uint32_t mask = 0; mask <= last; ++mask) {
    std::vector<double> v = Corner(d, mask);
    v.push_back(1.0);
    const double add = solver.Form(v);
    for (double& e : v) e = -e;
    const double remove = solver.Form(v);
    result.max_form = std::max(result.max_form, add);
    result.max_remove = std::max(result.max_remove, remove);
    if (mask == 0) result.zeros_form = add;
    if (mask == last) result.ones_form = add;
  }
  return result;
}

double MahalanobisAudit(std::size_t d, double c, double mu) {
  return MahalanobisAuditDetail(d, c, mu).max_form;
}

double MahalanobisForm(std::size_t d, double c, double mu,
                       const std::vector<double>& offset) {
  if (offset.size() != d + 1) {
    throw Error(ErrorCode::kInvalidArgument, "offset must have length d + 1");
  }
  return CovarianceSolver(d, c, mu).Form(offset);
}

CovarianceEstimate EmpiricalCovariance(const Sampler& sampler,
                                       std::size_t runs,
                                       const RngStream& stream,
                                       unsigned workers) {
  if (runs < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two runs");
  }
  const std::size_t chunks = (runs + kCovarianceChunk - 1) / kCovarianceChunk;
  std::vector<ChunkStats> results(chunks);
  auto chunk_runs = [&](std::size_t k) {
    return std::min(kCovarianceChunk, runs - k * kCovarianceChunk);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
  if (workers <= 1) {
    for (std::size_t k = 0; k < chunks; ++k) {
      results[k] = RunChunk(sampler, chunk_runs(k), stream.Derive(k));
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = next++; k < chunks; k = next++) {
            results[k] = RunChunk(sampler, chunk_runs(k), stream.Derive(k));
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  ChunkStats total;
  for (const ChunkStats& chunk : results) Merge(total, chunk);

  const std::size_t dim = total.mean.size();
  CovarianceEstimate estimate{total.mean, Matrix(dim, dim), runs};
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      estimate.covariance(i, j) = total.m2[i * dim + j] / (total.count - 1.0);
    }
  }
  return estimate;
}

Dataset AuditDataset(std::size_t d) {
  constexpr std::size_t kRows = 8;
  std::vector<double> values(kRows * d);
  for (std::size_t i = 0; i < kRows; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      values[i * d + j] = static_cast<double>((i + j) % 2);
    }
  }
  return Dataset::Create(d, std::move(values));
}

AuditReport EquivalenceTest(const Dataset& dataset, double mu,
                            std::size_t runs, const RngStream& stream,
                            const EquivalenceOptions& options) {
  const std::size_t d = dataset.dimension();
  const PrivacyBudget budget = PrivacyBudget::FromMu(mu);
  const double c_star = OptimalC(d);
  const double c_b = options.embedded_c.value_or(c_star);
  const Matrix sigma = CovarianceMatrixFor(d, c_star, mu);

  std::vector<double> truth = SumQueries(dataset).values;
  truth.push_back(static_cast<double>(dataset.size()));

  const Sampler direct = [&](RngStream& s) {
    return Flatten(CorrelatedGaussian(dataset, budget, s));
  };
  const Sampler embedded = [&](RngStream& s) {
    return Flatten(PostprocessHInverse(EmbeddedRelease(dataset, budget, c_b, s)));
  };

  const std::string prefix =
      "equivalence[d=" + std::to_string(d) + "]" + options.label;
  AuditReport report;
  CheckPipeline(report, prefix + ".direct",
                EmpiricalCovariance(direct, runs, stream.Derive(0),
                                    options.workers),
                sigma, truth, options.sigma_multiplier);
  CheckPipeline(report, prefix + ".embedded",
                EmpiricalCovariance(embedded, runs, stream.Derive(1),
                                    options.workers),
                sigma, truth, options.sigma_multiplier);
  return report;
}

AuditReport RunAuditSuite(const AuditSuiteOptions& options) {
  CheckAuditDimension(options.max_d);
  const std::string tag = options.fast ? "[fast]" : "";
  AuditReport report;

  const NoiseProfile profile = ComputeNoiseProfile(10000, 100.0, 1.0);
  report.Add("profile[d=10000,C=100].per_query_variance", 5000.5,
             profile.per_query_variance, 5000.5 * 1e-12);
  report.Add("profile[d=10000,C=100].n_variance", 2.0, profile.n_variance,
             2.0 * 1e-12);

  for (std::size_t d = 1; d <= options.max_d; ++d) {
    const double dd = static_cast<double>(d);
    const struct {
      const char* label;
      double c;
    } cs[] = {{"0.25", 0.25},
              {"1", 1.0},
              {"d^1/4", OptimalC(d)},
              {"d^1/2", std::sqrt(dd)},
              {"10", 10.0}};
    for (const auto& entry : cs) {
      const double analytic = EmbeddedSensitivity(d, entry.c);
      report.Add("sensitivity[d=" + std::to_string(d) + ",C=" + entry.label +
                     "]",
                 analytic, BruteForceSensitivity(d, entry.c), analytic * 1e-12);
    }
  }

  for (std::size_t d = 1; d <= options.max_d; ++d) {
    const std::string ds = std::to_string(d);
    const double c_star = OptimalC(d);
    const MahalanobisResult opt = MahalanobisAuditDetail(d, c_star, 1.0);
    report.Add("mahalanobis[d=" + ds + ",C=d^1/4].max", 1.0, opt.max_form,
               1e-9);
    report.Add("mahalanobis[d=" + ds + ",C=d^1/4].at_zeros", 1.0,
               opt.zeros_form, 1e-9);
    report.Add("mahalanobis[d=" + ds + ",C=d^1/4].at_ones", 1.0,
               opt.ones_form, 1e-9);
    report.Add("mahalanobis[d=" + ds + ",C=d^1/4].remove_symmetry",
               opt.max_form, opt.max_remove, 1e-9);
    report.Add("mahalanobis[d=" + ds + ",C=d^1/2].max", 1.0,
               MahalanobisAudit(d, std::sqrt(static_cast<double>(d)), 1.0),
               1e-9);

    const double root_d = std::sqrt(static_cast<double>(d));
    const Matrix sigma = CovarianceMatrixFor(d, c_star, 1.0);
    const double diag = (static_cast<double>(d) + 2.0 * root_d + 1.0) / 4.0;
    const std::string prefix = "covariance[d=" + ds + "]";
    report.Add(prefix + ".diagonal", diag, sigma(0, 0), diag * 1e-12);
    report.Add(prefix + ".corner", root_d + 1.0, sigma(d, d),
               (root_d + 1.0) * 1e-12);
    report.Add(prefix + ".edge", (root_d + 1.0) / 2.0, sigma(0, d),
               (root_d + 1.0) / 2.0 * 1e-12);
    if (d > 1) {
      report.Add(prefix + ".off_diagonal", (root_d + 1.0) / 4.0, sigma(0, 1),
                 (root_d + 1.0) / 4.0 * 1e-12);
    }
  }

  const std::size_t runs = options.fast ? 10000 : options.runs;
  const RngStream root = MakeStream(options.seed, 0);
  for (std::size_t d : {std::size_t{1}, std::size_t{4}}) {
    if (d > options.max_d) continue;
    EquivalenceOptions eq;
    eq.sigma_multiplier = options.fast ? 6.0 : 5.0;
    eq.workers = options.workers;
    eq.label = tag;
    report.Append(EquivalenceTest(AuditDataset(d), 1.0, runs, root.Derive(d),
                                  eq));
  }
  return report;
}

}  // namespace corrgauss
