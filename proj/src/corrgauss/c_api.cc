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

#include "corrgauss.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "corrgauss/analytics.h"
#include "corrgauss/audit.h"
#include "corrgauss/core.h"
#include "corrgauss/error.h"
#include "corrgauss/grouped.h"
#include "corrgauss/mechanisms.h"
#include "corrgauss/randomness.h"

struct cg_dataset {
  corrgauss::Dataset value;
};

struct cg_grouped_dataset {
  corrgauss::GroupedDataset value;
};

struct cg_rng {
  corrgauss::RngStream value;
};

struct cg_audit_report {
  corrgauss::AuditReport value;
  std::string text;
};

namespace {

using corrgauss::Error;
using corrgauss::ErrorCode;

thread_local std::string last_error;

cg_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return CG_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParseError: return CG_ERR_PARSE;
    case ErrorCode::kRaggedRow: return CG_ERR_RAGGED_ROW;
    case ErrorCode::kOutOfRange: return CG_ERR_OUT_OF_RANGE;
    case ErrorCode::kEmptyInput: return CG_ERR_EMPTY_INPUT;
    case ErrorCode::kBadGroupIndex: return CG_ERR_BAD_GROUP_INDEX;
    case ErrorCode::kNegativeVariance: return CG_ERR_NEGATIVE_VARIANCE;
    case ErrorCode::kNonPositiveSensitivity:
      return CG_ERR_NON_POSITIVE_SENSITIVITY;
    case ErrorCode::kNonPositiveC: return CG_ERR_NON_POSITIVE_C;
    case ErrorCode::kNonPositiveInput: return CG_ERR_NON_POSITIVE_INPUT;
    case ErrorCode::kOutOfBracket: return CG_ERR_OUT_OF_BRACKET;
    case ErrorCode::kDimensionTooLarge: return CG_ERR_DIMENSION_TOO_LARGE;
    case ErrorCode::kSingularMatrix: return CG_ERR_SINGULAR_MATRIX;
  }
  return CG_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into a status and the thread's message.
template <typename Fn>
cg_status Guard(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
    last_error.clear();
    return CG_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return CG_ERR_INTERNAL;
}

void Require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, message);
}

void RequireLength(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": expected length " +
                    std::to_string(want) + ", got " + std::to_string(got));
  }
}

corrgauss::NeighborRelation ToRelation(cg_relation relation) {
  switch (relation) {
    case CG_ADD_REMOVE: return corrgauss::NeighborRelation::kAddRemove;
    case CG_REPLACEMENT: return corrgauss::NeighborRelation::kReplacement;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown neighbor relation");
}

std::optional<std::size_t> Hint(std::size_t v) {
  return v == 0 ? std::nullopt : std::optional<std::size_t>(v);
}

void CopyOut(const std::vector<double>& from, double* to) {
  std::copy(from.begin(), from.end(), to);
}

}  // namespace

extern "C" {

const char* cg_version(void) { return "1.0.0"; }

const char* cg_last_error(void) { return last_error.c_str(); }

const char* cg_status_name(cg_status status) {
  switch (status) {
    case CG_OK: return "OK";
    case CG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case CG_ERR_PARSE: return "ParseError";
    case CG_ERR_RAGGED_ROW: return "RaggedRow";
    case CG_ERR_OUT_OF_RANGE: return "OutOfRange";
    case CG_ERR_EMPTY_INPUT: return "EmptyInput";
    case CG_ERR_BAD_GROUP_INDEX: return "BadGroupIndex";
    case CG_ERR_NEGATIVE_VARIANCE: return "NegativeVariance";
    case CG_ERR_NON_POSITIVE_SENSITIVITY: return "NonPositiveSensitivity";
    case CG_ERR_NON_POSITIVE_C: return "NonPositiveC";
    case CG_ERR_NON_POSITIVE_INPUT: return "NonPositiveInput";
    case CG_ERR_OUT_OF_BRACKET: return "OutOfBracket";
    case CG_ERR_DIMENSION_TOO_LARGE: return "DimensionTooLarge";
    case CG_ERR_SINGULAR_MATRIX: return "SingularMatrix";
    case CG_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

cg_status cg_dataset_load_csv(const char* text, size_t length,
                              size_t dimension, cg_dataset** out) {
  return Guard([&] {
    Require(out != nullptr && (text != nullptr || length == 0),
            "null argument");
    *out = new cg_dataset{corrgauss::LoadDataset(
        std::string_view(text ? text : "", length), Hint(dimension))};
  });
}

cg_status cg_dataset_create(const double* values, size_t rows,
                            size_t dimension, cg_dataset** out) {
  return Guard([&] {
    Require(out != nullptr && (values != nullptr || rows == 0),
            "null argument");
    std::vector<double> v(values, values + rows * dimension);
    *out = new cg_dataset{corrgauss::Dataset::Create(dimension, std::move(v))};
  });
}

void cg_dataset_free(cg_dataset* dataset) { delete dataset; }

size_t cg_dataset_rows(const cg_dataset* dataset) {
  return dataset ? dataset->value.size() : 0;
}

size_t cg_dataset_dimension(const cg_dataset* dataset) {
  return dataset ? dataset->value.dimension() : 0;
}

cg_status cg_sum_queries(const cg_dataset* dataset, double* out,
                         size_t length) {
  return Guard([&] {
    Require(dataset && out, "null argument");
    RequireLength(length, dataset->value.dimension(), "queries");
    CopyOut(corrgauss::SumQueries(dataset->value).values, out);
  });
}

cg_status cg_grouped_load_csv(const char* text, size_t length, size_t groups,
                              size_t dimension, cg_grouped_dataset** out) {
  return Guard([&] {
    Require(out != nullptr && (text != nullptr || length == 0),
            "null argument");
    *out = new cg_grouped_dataset{corrgauss::LoadGroupedDataset(
        std::string_view(text ? text : "", length), Hint(groups),
        Hint(dimension))};
  });
}

void cg_grouped_free(cg_grouped_dataset* dataset) { delete dataset; }

size_t cg_grouped_groups(const cg_grouped_dataset* dataset) {
  return dataset ? dataset->value.groups() : 0;
}

size_t cg_grouped_dimension(const cg_grouped_dataset* dataset) {
  return dataset ? dataset->value.dimension() : 0;
}

cg_status cg_grouped_sums(const cg_grouped_dataset* dataset, double* sums,
                          size_t sums_length, double* counts,
                          size_t counts_length) {
  return Guard([&] {
    Require(dataset && sums && counts, "null argument");
    const auto& g = dataset->value;
    RequireLength(sums_length, g.groups() * g.dimension(), "sums");
    RequireLength(counts_length, g.groups(), "counts");
    const corrgauss::GroupedSums result = corrgauss::ComputeGroupedSums(g);
    CopyOut(result.sums.data(), sums);
    CopyOut(result.counts, counts);
  });
}

cg_status cg_rng_create(uint64_t base_seed, uint64_t stream_id, cg_rng** out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = new cg_rng{corrgauss::MakeStream(base_seed, stream_id)};
  });
}

void cg_rng_free(cg_rng* rng) { delete rng; }

cg_status cg_rng_gaussian(cg_rng* rng, double mean, double variance,
                          double* out) {
  return Guard([&] {
    Require(rng && out, "null argument");
    *out = rng->value.Gaussian(mean, variance);
  });
}

cg_status cg_standard_gaussian(const double* queries, size_t d,
                               double sensitivity, double mu, cg_rng* rng,
                               double* out) {
  return Guard([&] {
    Require(queries && rng && out, "null argument");
    corrgauss::QueryVector f{std::vector<double>(queries, queries + d)};
    CopyOut(corrgauss::StandardGaussian(f, sensitivity,
                                        corrgauss::PrivacyBudget::FromMu(mu),
                                        rng->value)
                .values,
            out);
  });
}

cg_status cg_correlated_gaussian(const cg_dataset* dataset, double mu,
                                 cg_rng* rng, double* estimates, size_t d,
                                 double* n_estimate) {
  return Guard([&] {
    Require(dataset && rng && estimates && n_estimate, "null argument");
    RequireLength(d, dataset->value.dimension(), "estimates");
    const corrgauss::ReleaseOutput r = corrgauss::CorrelatedGaussian(
        dataset->value, corrgauss::PrivacyBudget::FromMu(mu), rng->value);
    CopyOut(r.estimates, estimates);
    *n_estimate = r.n_estimate;
  });
}

cg_status cg_correlated_gaussian_tunable(const cg_dataset* dataset, double mu,
                                         double c, cg_rng* rng,
                                         double* estimates, size_t d,
                                         double* n_estimate) {
  return Guard([&] {
    Require(dataset && rng && estimates && n_estimate, "null argument");
    RequireLength(d, dataset->value.dimension(), "estimates");
    const corrgauss::ReleaseOutput r = corrgauss::CorrelatedGaussianTunable(
        dataset->value, corrgauss::PrivacyBudget::FromMu(mu), c, rng->value);
    CopyOut(r.estimates, estimates);
    *n_estimate = r.n_estimate;
  });
}

cg_status cg_embed_point(const double* x, size_t d, double c, double* out,
                         size_t out_length) {
  return Guard([&] {
    Require(x && out, "null argument");
    RequireLength(out_length, d + 1, "embedded point");
    CopyOut(corrgauss::EmbedPoint(std::span<const double>(x, d), c), out);
  });
}

cg_status cg_embedded_release(const cg_dataset* dataset, double mu, double c,
                              cg_rng* rng, double* out, size_t out_length) {
  return Guard([&] {
    Require(dataset && rng && out, "null argument");
    RequireLength(out_length, dataset->value.dimension() + 1, "embedded");
    CopyOut(corrgauss::EmbeddedRelease(dataset->value,
                                       corrgauss::PrivacyBudget::FromMu(mu), c,
                                       rng->value)
                .values,
            out);
  });
}

cg_status cg_postprocess_h_inverse(const double* y, size_t length, double c,
                                   double* estimates, size_t d,
                                   double* n_estimate) {
  return Guard([&] {
    Require(y && estimates && n_estimate, "null argument");
    RequireLength(d + 1, length, "embedded");
    const corrgauss::ReleaseOutput r = corrgauss::PostprocessHInverse(
        corrgauss::EmbeddedVector{std::vector<double>(y, y + length), c});
    CopyOut(r.estimates, estimates);
    *n_estimate = r.n_estimate;
  });
}

cg_status cg_postprocess_h(const double* estimates, size_t d,
                           double n_estimate, double c, double* y,
                           size_t length) {
  return Guard([&] {
    Require(estimates && y, "null argument");
    RequireLength(length, d + 1, "embedded");
    corrgauss::ReleaseOutput r{std::vector<double>(estimates, estimates + d),
                               n_estimate};
    CopyOut(corrgauss::PostprocessH(r, c).values, y);
  });
}

cg_status cg_known_n_release(const cg_dataset* dataset, double n_estimate,
                             double mu, cg_rng* rng, double* out, size_t d) {
  return Guard([&] {
    Require(dataset && rng && out, "null argument");
    RequireLength(d, dataset->value.dimension(), "estimates");
    CopyOut(corrgauss::KnownNRelease(dataset->value, n_estimate,
                                     corrgauss::PrivacyBudget::FromMu(mu),
                                     rng->value)
                .values,
            out);
  });
}

cg_status cg_grouped_release(const cg_grouped_dataset* dataset, double mu,
                             cg_relation relation, cg_rng* rng,
                             double* estimates, size_t estimates_length,
                             double* counts, size_t counts_length) {
  return Guard([&] {
    Require(dataset && rng && estimates && counts, "null argument");
    const auto& g = dataset->value;
    RequireLength(estimates_length, g.groups() * g.dimension(), "estimates");
    RequireLength(counts_length, g.groups(), "counts");
    const corrgauss::GroupedRelease r = corrgauss::ReleaseGrouped(
        g, corrgauss::PrivacyBudget::FromMu(mu), ToRelation(relation),
        rng->value);
    CopyOut(r.estimates.data(), estimates);
    CopyOut(r.group_counts, counts);
  });
}

cg_status cg_grouped_standard(const cg_grouped_dataset* dataset, double mu,
                              cg_relation relation, cg_rng* rng,
                              double* estimates, size_t estimates_length) {
  return Guard([&] {
    Require(dataset && rng && estimates, "null argument");
    const auto& g = dataset->value;
    RequireLength(estimates_length, g.groups() * g.dimension(), "estimates");
    CopyOut(corrgauss::ReleaseGroupedStandard(
                g, corrgauss::PrivacyBudget::FromMu(mu), ToRelation(relation),
                rng->value)
                .data(),
            estimates);
  });
}

cg_status cg_noise_profile_compute(size_t d, double c, double mu,
                                   cg_noise_profile* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    const corrgauss::NoiseProfile p = corrgauss::ComputeNoiseProfile(d, c, mu);
    *out = {p.d, p.c, p.mu, p.a, p.b, p.per_query_variance, p.n_variance};
  });
}

cg_status cg_optimal_c(size_t d, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = corrgauss::OptimalC(d);
  });
}

cg_status cg_covariance_matrix(size_t d, double c, double mu, double* out,
                               size_t length) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    RequireLength(length, (d + 1) * (d + 1), "covariance");
    CopyOut(corrgauss::CovarianceMatrixFor(d, c, mu).data(), out);
  });
}

cg_status cg_embedded_sensitivity(size_t d, double c, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = corrgauss::EmbeddedSensitivity(d, c);
  });
}

cg_status cg_flat_sensitivity(size_t d, cg_relation relation,
                              cg_layout layout, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    Require(layout == CG_LAYOUT_FLAT || layout == CG_LAYOUT_GROUPED,
            "unknown layout");
    *out = corrgauss::FlatSensitivity(
        d, ToRelation(relation),
        layout == CG_LAYOUT_GROUPED ? corrgauss::QueryLayout::kGrouped
                                    : corrgauss::QueryLayout::kFlat);
  });
}

cg_status cg_gdp_to_zcdp(double mu, double* rho) {
  return Guard([&] {
    Require(rho != nullptr, "null argument");
    *rho = corrgauss::GdpToZcdp(mu);
  });
}

cg_status cg_gdp_to_approx_dp(double mu, double epsilon, double* delta) {
  return Guard([&] {
    Require(delta != nullptr, "null argument");
    *delta = corrgauss::GdpToApproxDp(mu, epsilon);
  });
}

cg_status cg_calibrate_mu(double epsilon, double delta, double* mu) {
  return Guard([&] {
    Require(mu != nullptr, "null argument");
    *mu = corrgauss::CalibrateMu(epsilon, delta);
  });
}

cg_status cg_brute_force_sensitivity(size_t d, double c, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = corrgauss::BruteForceSensitivity(d, c);
  });
}

cg_status cg_mahalanobis_audit(size_t d, double c, double mu, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = corrgauss::MahalanobisAudit(d, c, mu);
  });
}

void cg_audit_options_default(cg_audit_options* options) {
  if (!options) return;
  const corrgauss::AuditSuiteOptions defaults;
  *options = {defaults.max_d, defaults.runs, defaults.seed,
              defaults.fast ? 1 : 0, defaults.workers};
}

cg_status cg_audit_run_suite(const cg_audit_options* options,
                             cg_audit_report** out) {
  return Guard([&] {
    Require(options && out, "null argument");
    corrgauss::AuditSuiteOptions o;
    o.max_d = options->max_d;
    o.runs = options->runs;
    o.seed = options->seed;
    o.fast = options->fast != 0;
    o.workers = options->workers;
    auto report = std::make_unique<cg_audit_report>();
    report->value = corrgauss::RunAuditSuite(o);
    report->text = report->value.Format();
    *out = report.release();
  });
}

cg_status cg_audit_equivalence(const cg_dataset* dataset, double mu,
                               size_t runs, uint64_t seed, double embedded_c,
                               unsigned workers, cg_audit_report** out) {
  return Guard([&] {
    Require(dataset && out, "null argument");
    corrgauss::EquivalenceOptions o;
    if (embedded_c > 0.0) o.embedded_c = embedded_c;
    o.workers = workers;
    auto report = std::make_unique<cg_audit_report>();
    report->value = corrgauss::EquivalenceTest(
        dataset->value, mu, runs, corrgauss::MakeStream(seed, 0), o);
    report->text = report->value.Format();
    *out = report.release();
  });
}

void cg_audit_report_free(cg_audit_report* report) { delete report; }

size_t cg_audit_report_size(const cg_audit_report* report) {
  return report ? report->value.checks().size() : 0;
}

cg_status cg_audit_report_check(const cg_audit_report* report, size_t index,
                                cg_audit_check* out) {
  return Guard([&] {
    Require(report && out, "null argument");
    Require(index < report->value.checks().size(), "check index out of range");
    const corrgauss::AuditCheck& c = report->value.checks()[index];
    *out = {c.name.c_str(), c.expected, c.observed, c.tolerance,
            c.pass ? 1 : 0};
  });
}

int cg_audit_report_passed(const cg_audit_report* report) {
  return report && report->value.AllPassed() ? 1 : 0;
}

const char* cg_audit_report_text(const cg_audit_report* report) {
  return report ? report->text.c_str() : "";
}

}  // extern "C"
