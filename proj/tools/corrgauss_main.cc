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

// corrgauss: command-line front end. Talks to the library only through the
// C API in corrgauss.h.
//
// Exit codes: 0 success, 1 data error or failed check, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corrgauss.h"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultSeed = 42;

struct UsageError {
  std::string message;
};

struct DataError {
  std::string message;
};

void Check(cg_status status) {
  if (status != CG_OK) {
    throw DataError{std::string(cg_status_name(status)) + ": " +
                    cg_last_error()};
  }
}

std::string Fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string Num17(double v) { return Fmt("%.17g", v); }
std::string Num12(double v) { return Fmt("%.12g", v); }

std::string ReadInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError{"cannot open input file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("CORRGAUSS_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  const std::string text(env);
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.front() == '-') {
    throw UsageError{"CORRGAUSS_SEED is not a decimal 64-bit integer"};
  }
  return value;
}

struct BudgetFlags {
  std::optional<double> mu;
  std::optional<double> epsilon;
  std::optional<double> delta;

  void Register(CLI::App* app) {
    app->add_option("--mu", mu, "GDP parameter mu");
    app->add_option("--epsilon", epsilon, "epsilon, calibrated with --delta");
    app->add_option("--delta", delta, "delta, calibrated with --epsilon");
  }

  double Resolve() const {
    if (mu && (epsilon || delta)) {
      throw UsageError{"give either --mu or --epsilon/--delta, not both"};
    }
    if (mu) return *mu;
    if (!epsilon || !delta) {
      throw UsageError{"a budget is required: --mu or --epsilon with --delta"};
    }
    double value = 0.0;
    Check(cg_calibrate_mu(*epsilon, *delta, &value));
    std::cerr << "mu = " << Num17(value) << "\n";
    return value;
  }
};

struct DatasetHandle {
  cg_dataset* ptr = nullptr;
  ~DatasetHandle() { cg_dataset_free(ptr); }
};

struct GroupedHandle {
  cg_grouped_dataset* ptr = nullptr;
  ~GroupedHandle() { cg_grouped_free(ptr); }
};

struct RngHandle {
  cg_rng* ptr = nullptr;
  explicit RngHandle(std::uint64_t seed) { Check(cg_rng_create(seed, 0, &ptr)); }
  ~RngHandle() { cg_rng_free(ptr); }
};

struct ReportHandle {
  cg_audit_report* ptr = nullptr;
  ~ReportHandle() { cg_audit_report_free(ptr); }
};

// ---- run ------------------------------------------------------------------

struct RunFlags {
  std::string input;
  std::size_t d = 0;
  BudgetFlags budget;
  std::optional<double> c;
  bool optimal_c = false;
  std::optional<double> known_n;
  std::optional<std::uint64_t> seed;
};

int CmdRun(const RunFlags& f) {
  if ((f.c || f.optimal_c) && f.known_n) {
    throw UsageError{"--known-n cannot be combined with --c/--optimal-c"};
  }
  if (f.c && f.optimal_c) {
    throw UsageError{"give either --c or --optimal-c"};
  }
  const double mu = f.budget.Resolve();
  const std::uint64_t seed = ResolveSeed(f.seed);
  const std::string text = ReadInput(f.input);

  DatasetHandle ds;
  Check(cg_dataset_load_csv(text.data(), text.size(), f.d, &ds.ptr));
  const std::size_t d = cg_dataset_dimension(ds.ptr);
  RngHandle rng(seed);

  std::vector<double> estimates(d);
  std::optional<double> n_estimate;
  if (f.known_n) {
    Check(cg_known_n_release(ds.ptr, *f.known_n, mu, rng.ptr, estimates.data(),
                             d));
  } else if (f.c || f.optimal_c) {
    double c = 0.0;
    if (f.optimal_c) {
      Check(cg_optimal_c(d, &c));
      std::cerr << "C = " << Num17(c) << "\n";
    } else {
      c = *f.c;
    }
    double n = 0.0;
    Check(cg_correlated_gaussian_tunable(ds.ptr, mu, c, rng.ptr,
                                         estimates.data(), d, &n));
    n_estimate = n;
  } else {
    double n = 0.0;
    Check(cg_correlated_gaussian(ds.ptr, mu, rng.ptr, estimates.data(), d, &n));
    n_estimate = n;
  }

  std::string out = "kind,index,value\n";
  if (n_estimate) out += "n_estimate,-1," + Num17(*n_estimate) + "\n";
  for (std::size_t i = 0; i < d; ++i) {
    out += "query," + std::to_string(i) + "," + Num17(estimates[i]) + "\n";
  }
  std::cout << out;
  return 0;
}

// ---- grouped-run ----------------------------------------------------------

struct GroupedRunFlags {
  std::string input;
  std::size_t groups = 0;
  std::size_t d = 0;
  BudgetFlags budget;
  std::string relation = "add-remove";
  bool standard = false;
  std::optional<std::uint64_t> seed;
};

int CmdGroupedRun(const GroupedRunFlags& f) {
  const double mu = f.budget.Resolve();
  const std::uint64_t seed = ResolveSeed(f.seed);
  const cg_relation relation =
      f.relation == "replacement" ? CG_REPLACEMENT : CG_ADD_REMOVE;
  const std::string text = ReadInput(f.input);

  GroupedHandle ds;
  Check(cg_grouped_load_csv(text.data(), text.size(), f.groups, f.d, &ds.ptr));
  const std::size_t m = cg_grouped_groups(ds.ptr);
  const std::size_t d = cg_grouped_dimension(ds.ptr);
  RngHandle rng(seed);

  std::vector<double> estimates(m * d);
  std::vector<double> counts(m);
  if (f.standard) {
    Check(cg_grouped_standard(ds.ptr, mu, relation, rng.ptr, estimates.data(),
                              estimates.size()));
  } else {
    Check(cg_grouped_release(ds.ptr, mu, relation, rng.ptr, estimates.data(),
                             estimates.size(), counts.data(), counts.size()));
  }

  std::string out = "kind,group,index,value\n";
  for (std::size_t j = 0; j < m; ++j) {
    const std::string group = std::to_string(j + 1);
    if (!f.standard) out += "count," + group + ",-1," + Num17(counts[j]) + "\n";
    for (std::size_t k = 0; k < d; ++k) {
      out += "query," + group + "," + std::to_string(k) + "," +
             Num17(estimates[j * d + k]) + "\n";
    }
  }
  std::cout << out;
  return 0;
}

// ---- variance-vs-c --------------------------------------------------------

struct VarianceFlags {
  std::size_t d = 0;
  double mu = 1.0;
  double c_min = 0.0;
  double c_max = 0.0;
  std::size_t steps = 0;
  bool gnuplot_hint = false;
};

int CmdVarianceVsC(const VarianceFlags& f) {
  if (!(f.c_min > 0.0) || !(f.c_min < f.c_max) || !std::isfinite(f.c_max)) {
    throw UsageError{"need 0 < --c-min < --c-max"};
  }
  if (f.steps < 2) throw UsageError{"--steps must be at least 2"};
  if (f.d < 1) throw UsageError{"--d must be at least 1"};
  if (!(f.mu > 0.0)) throw UsageError{"--mu must be positive"};

  std::string out = "C,A,B,per_query_variance,n_variance\n";
  const double ratio = f.c_max / f.c_min;
  for (std::size_t i = 0; i < f.steps; ++i) {
    double c = f.c_min * std::pow(ratio, static_cast<double>(i) /
                                             static_cast<double>(f.steps - 1));
    if (i == 0) c = f.c_min;
    if (i + 1 == f.steps) c = f.c_max;
    cg_noise_profile p;
    Check(cg_noise_profile_compute(f.d, c, f.mu, &p));
    out += Num17(c) + "," + Num17(p.a) + "," + Num17(p.b) + "," +
           Num17(p.per_query_variance) + "," + Num17(p.n_variance) + "\n";
  }
  std::cout << out;
  if (f.gnuplot_hint) {
    std::cerr << "set datafile separator ','\n"
                 "set logscale x\n"
                 "set xlabel 'C'\n"
                 "set ylabel 'variance'\n"
                 "plot 'variance.csv' every ::1 using 1:4 with lines "
                 "title 'per-query variance', \\\n"
                 "     '' every ::1 using 1:5 with lines title 'n variance'\n";
  }
  return 0;
}

// ---- compare --------------------------------------------------------------

struct CompareFlags {
  std::size_t d = 0;
  double mu = 1.0;
  bool gnuplot_hint = false;
};

int CmdCompare(const CompareFlags& f) {
  if (f.d < 1) throw UsageError{"--d must be at least 1"};
  if (!(f.mu > 0.0)) throw UsageError{"--mu must be positive"};
  double flat = 0.0;
  double grouped_replacement = 0.0;
  Check(cg_flat_sensitivity(f.d, CG_ADD_REMOVE, CG_LAYOUT_FLAT, &flat));
  Check(cg_flat_sensitivity(f.d, CG_REPLACEMENT, CG_LAYOUT_GROUPED,
                            &grouped_replacement));
  cg_noise_profile p;
  double c = 0.0;
  Check(cg_optimal_c(f.d, &c));
  Check(cg_noise_profile_compute(f.d, c, f.mu, &p));

  const double dd = static_cast<double>(f.d);
  const double standard = flat / f.mu;
  const struct {
    const char* mechanism;
    const char* relation;
    double std;
  } rows[] = {
      {"standard", "add_remove", standard},
      {"standard_grouped", "replacement", grouped_replacement / f.mu},
      {"correlated", "add_remove", (std::sqrt(dd) + 1.0) / (2.0 * f.mu)},
      {"known_n", "add_remove", std::sqrt(dd) / (2.0 * f.mu)},
      {"correlated_grouped", "replacement", std::sqrt(dd + 4.0) / f.mu},
  };
  std::string out = "mechanism,relation,per_query_std,ratio_vs_standard\n";
  for (const auto& r : rows) {
    out += std::string(r.mechanism) + "," + r.relation + "," + Num17(r.std) +
           "," + Num17(r.std / standard) + "\n";
  }
  std::cout << out;
  std::cerr << "correlated per-query variance (closed form) = "
            << Num17(p.per_query_variance) << "\n";
  if (f.gnuplot_hint) {
    std::cerr << "set datafile separator ','\n"
                 "set style data histogram\n"
                 "set ylabel 'std / standard std'\n"
                 "plot 'compare.csv' every ::1 using 4:xtic(1) title 'ratio'\n";
  }
  return 0;
}

// ---- audit ----------------------------------------------------------------

struct AuditFlags {
  std::size_t max_d = 12;
  std::size_t runs = 200000;
  bool fast = false;
  unsigned workers = 1;
  std::optional<std::uint64_t> seed;
};

int CmdAudit(const AuditFlags& f) {
  if (f.max_d < 1 || f.max_d > 12) throw UsageError{"--max-d must be in 1..12"};
  if (!f.fast && f.runs < 100000) {
    throw UsageError{"--runs must be at least 100000 (or use --fast)"};
  }
  cg_audit_options options;
  cg_audit_options_default(&options);
  options.max_d = f.max_d;
  options.runs = f.runs;
  options.seed = ResolveSeed(f.seed);
  options.fast = f.fast ? 1 : 0;
  options.workers = f.workers;

  ReportHandle report;
  Check(cg_audit_run_suite(&options, &report.ptr));
  std::cout << cg_audit_report_text(report.ptr);
  return cg_audit_report_passed(report.ptr) ? 0 : kExitData;
}

// ---- calibrate ------------------------------------------------------------

struct CalibrateFlags {
  std::optional<double> mu;
  std::optional<double> epsilon;
  std::optional<double> delta;
};

int CmdCalibrate(const CalibrateFlags& f) {
  double mu = 0.0;
  if (f.mu) {
    if (f.delta) throw UsageError{"--delta cannot be combined with --mu"};
    mu = *f.mu;
  } else {
    if (!f.epsilon || !f.delta) {
      throw UsageError{"give --mu [--epsilon] or --epsilon with --delta"};
    }
    Check(cg_calibrate_mu(*f.epsilon, *f.delta, &mu));
  }
  if (!(mu > 0.0)) throw UsageError{"--mu must be positive"};
  double rho = 0.0;
  Check(cg_gdp_to_zcdp(mu, &rho));
  std::string out = "mu=" + Num12(mu) + "\nrho=" + Num12(rho) + "\n";
  if (f.epsilon) {
    double delta = 0.0;
    Check(cg_gdp_to_approx_dp(mu, *f.epsilon, &delta));
    out += "epsilon=" + Num12(*f.epsilon) + "\ndelta=" + Num12(delta) + "\n";
  }
  std::cout << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlated Gaussian noise for private bounded sums"};
  app.require_subcommand(1, 1);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "release noisy row sums");
  run_cmd->add_option("--input", run.input, "dense CSV path, '-' for stdin")
      ->required();
  run_cmd->add_option("--d", run.d, "dimension when the input may be empty");
  run.budget.Register(run_cmd);
  run_cmd->add_option("--c", run.c, "noise split parameter C");
  run_cmd->add_flag("--optimal-c", run.optimal_c, "use C = d^{1/4}");
  run_cmd->add_option("--known-n", run.known_n,
                      "externally estimated dataset size");
  run_cmd->add_option("--seed", run.seed, "64-bit seed");

  GroupedRunFlags grouped;
  CLI::App* grouped_cmd =
      app.add_subcommand("grouped-run", "release noisy grouped sums");
  grouped_cmd->add_option("--input", grouped.input, "sparse CSV path or '-'")
      ->required();
  grouped_cmd->add_option("--groups", grouped.groups, "group count m");
  grouped_cmd->add_option("--d", grouped.d, "dimension d");
  grouped.budget.Register(grouped_cmd);
  grouped_cmd->add_option("--relation", grouped.relation)
      ->check(CLI::IsMember({"add-remove", "replacement"}));
  grouped_cmd->add_flag("--standard", grouped.standard,
                        "independent-noise baseline instead");
  grouped_cmd->add_option("--seed", grouped.seed, "64-bit seed");

  VarianceFlags variance;
  CLI::App* variance_cmd = app.add_subcommand(
      "variance-vs-c", "closed-form variances over a geometric C grid");
  variance_cmd->add_option("--d", variance.d)->required();
  variance_cmd->add_option("--mu", variance.mu);
  variance_cmd->add_option("--c-min", variance.c_min)->required();
  variance_cmd->add_option("--c-max", variance.c_max)->required();
  variance_cmd->add_option("--steps", variance.steps)->required();
  variance_cmd->add_flag("--gnuplot-hint", variance.gnuplot_hint);

  CompareFlags compare;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "per-query std of each mechanism");
  compare_cmd->add_option("--d", compare.d)->required();
  compare_cmd->add_option("--mu", compare.mu);
  compare_cmd->add_flag("--gnuplot-hint", compare.gnuplot_hint);

  AuditFlags audit;
  CLI::App* audit_cmd = app.add_subcommand("audit", "run the audit suite");
  audit_cmd->add_option("--max-d", audit.max_d);
  audit_cmd->add_option("--runs", audit.runs);
  audit_cmd->add_flag("--fast", audit.fast, "10^4 runs, 6 SE tolerance");
  audit_cmd->add_option("--workers", audit.workers, "0 = all cores");
  audit_cmd->add_option("--seed", audit.seed, "64-bit seed");

  CalibrateFlags calibrate;
  CLI::App* calibrate_cmd =
      app.add_subcommand("calibrate", "convert between privacy budgets");
  calibrate_cmd->add_option("--mu", calibrate.mu);
  calibrate_cmd->add_option("--epsilon", calibrate.epsilon);
  calibrate_cmd->add_option("--delta", calibrate.delta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) return CmdRun(run);
    if (*grouped_cmd) return CmdGroupedRun(grouped);
    if (*variance_cmd) return CmdVarianceVsC(variance);
    if (*compare_cmd) return CmdCompare(compare);
    if (*audit_cmd) return CmdAudit(audit);
    if (*calibrate_cmd) return CmdCalibrate(calibrate);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitData;
  }
  return kExitUsage;
}
