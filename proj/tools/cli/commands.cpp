// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cli/output.hpp"
#include "msc/ar_model.hpp"
#include "msc/distributions.hpp"
#include "msc/parallel.hpp"

namespace msc::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

EngineOptions engine_options(const RunConfig& c) {
  EngineOptions o;
  o.cap = c.cap;
  o.workers = c.workers;
  return o;
}

void prepare_output(const RunConfig& c) {
  ensure_directory(c.output_dir);
  write_json(c.output_dir / "config.json", to_json(c));
}

json result_json(const MscResult& r) {
  return {{"N", r.N},
          {"M", r.M},
          {"ess", r.ess},
          {"w2_hat", r.w2_hat},
          {"skip_fraction", r.skip_fraction},
          {"mean_tau", r.mean_tau},
          {"p95_tau", r.p95_tau}};
}

json chain_json(const ChainRunResult& r) {
  json j = {{"n_steps", r.n_steps}, {"burn_in", r.burn_in}, {"batches", r.batches}};
  j["acceptance_rate"] = r.acceptance_rate ? json(*r.acceptance_rate) : json(nullptr);
  return j;
}

void print_estimates(std::ostream& out, const std::vector<std::string>& names, const std::vector<double>& est,
                     const std::vector<double>& se) {
  char buf[160];
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::snprintf(buf, sizeof buf, "  %-12s %14.6g  +/- %.3g\n", names[j].c_str(), est[j], se[j]);
    out << buf;
  }
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.begin(), v.end()}; }

/// Start state for single-chain baselines.
Eigen::VectorXd baseline_start(const RunConfig& c, const LogitModel& model, const WeightedAtoms* atoms,
                               std::ostream& log) {
  RngStream stream(c.seed, "baseline-start", 0);
  switch (c.baseline.start) {
    case StartMode::kMode:
      return model.posterior().mode();
    case StartMode::kProposal:
      return model.posterior().proposal_sample(stream);
    case StartMode::kAtom:
      break;
  }
  if (atoms) return atoms->atoms[sample_categorical(stream, atoms->norm_weights)];
  log << "building initial distribution (N = " << c.sampling.N << ") for the baseline start\n";
  const WeightedAtoms built = build_initial_distribution(model, c.sampling.N, c.seed, c.workers);
  return built.atoms[sample_categorical(stream, built.norm_weights)];
}

RwmOptions rwm_options(const RunConfig& c) {
  RwmOptions o;
  o.scale_override = c.baseline.rwm_scale_override;
  o.shape = c.baseline.rwm_shape == RwmShape::kLaplace ? RwmOptions::Shape::kLaplace : RwmOptions::Shape::kPrior;
  return o;
}

std::uint64_t burn_in(const RunConfig& c) { return c.baseline.burn_in.value_or(default_burn_in(c.baseline.steps)); }

json pg_json(const bounds::PgConstants& pg, std::uint64_t M, std::uint64_t N) {
  json j = {{"L", pg.L},
            {"r", pg.r},
            {"gamma_r", pg.gamma_r},
            {"K", pg.K},
            {"K_with_trace", pg.K_with_trace},
            {"R", pg.R},
            {"x_norm_sq", pg.x_norm_sq},
            {"lambda_star", pg.lambda_star},
            {"log_W_d", pg.log_W_d},
            {"log_chi2_bound", pg.log_chi2_bound},
            {"valid", pg.valid}};
  j["W_d"] = std::isfinite(pg.W_d) ? json(pg.W_d) : json("inf");
  j["chi2_bound"] = std::isfinite(pg.chi2_bound) ? json(pg.chi2_bound) : json("inf");
  if (pg.valid) {
    const double literal = bounds::pg_mse_bound_literal(pg, M, N);
    const double composed = bounds::pg_mse_bound_composed(pg, M, N);
    j["mse_bound_literal"] = std::isfinite(literal) ? json(literal) : json("inf");
    j["mse_bound_composed"] = std::isfinite(composed) ? json(composed) : json("inf");
  }
  return j;
}

}  // namespace

std::vector<PlanRow> plan_rows(const RunConfig& c) {
  std::vector<PlanRow> rows;
  for (std::size_t d : c.plan.dims) {
    const auto k = bounds::ar_constants(c.ar.rho, d, c.ar.h, c.ar.r);
    const auto plan = bounds::plan_sizes(c.plan.eps, c.plan.delta, k.gamma, k.K, k.R, k.w2, k.sup_V_C);
    rows.push_back({d, k.gamma, k.K, k.R, bounds::gamma_R(k.gamma, k.K, k.R), k.w2, plan.N, plan.M});
  }
  return rows;
}

std::vector<PlanRow> cmd_plan(const RunConfig& c, std::ostream& out, std::ostream& log) {
  prepare_output(c);
  const auto rows = plan_rows(c);
  CsvTable table(kPlanSchema, {"d", "gamma", "K", "R", "gamma_R", "w2", "N_required", "M_required"});
  for (const auto& r : rows) {
    table.add_row({std::to_string(r.d), format_real(r.gamma), format_real(r.K), format_real(r.R),
                   format_real(r.gamma_R), format_real(r.w2), std::to_string(r.N), std::to_string(r.M)});
  }
  table.write(c.output_dir / "plan.csv");
  out << table.str();
  log << "wrote " << (c.output_dir / "plan.csv").string() << '\n';
  return rows;
}

ArRun cmd_run_ar(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const auto start = Clock::now();
  const ArModel model(ArConfig{c.ar.rho, c.ar.d, c.ar.h, c.ar.r});
  const auto& k = model.constants();
  std::uint64_t N = c.sampling.N;
  std::uint64_t M = c.sampling.M;
  if (c.sampling.eps) {
    const auto plan = bounds::plan_sizes(*c.sampling.eps, *c.sampling.delta, k.gamma, k.K, k.R, k.w2, k.sup_V_C);
    N = plan.N;
    M = std::max<std::uint64_t>(plan.M, 2);
    log << "planned N = " << N << ", M = " << M << '\n';
  }
  prepare_output(c);

  const std::size_t workers = resolve_workers(c.workers);
  log << "AR model: d = " << c.ar.d << ", N = " << N << ", M = " << M << ", workers = " << workers << '\n';
  const WeightedAtoms atoms = build_initial_distribution(model, N, c.seed, c.workers);
  const auto functions = coordinate_functions(c.ar.d);
  ArRun run;
  run.constants = k;
  run.result = msc_estimate(model, atoms, M, functions, c.seed, engine_options(c));
  const double runtime = seconds_since(start);

  estimates_table(run.result.names, run.result.estimates, run.result.stderrs).write(c.output_dir / "estimates.csv");
  excursions_table(run.result.taus).write(c.output_dir / "excursions.csv");

  const auto drift = model.drift();
  const bounds::GeometricBoundInput in{k.gamma, k.K, k.R, M, N, k.w2, k.sup_V_C};
  json diag = {{"schema", kDiagnosticsSchema}, {"command", "run-ar"}, {"workers", workers},
               {"runtime_seconds", runtime}};
  diag["result"] = result_json(run.result);
  diag["drift"] = {{"gamma", drift.gamma}, {"K", drift.K}, {"R", drift.R}, {"gamma_R", drift.gamma_R()},
                   {"w2", k.w2}, {"sup_V_C", k.sup_V_C}};
  diag["bounds"] = {{"mse", bounds::mse_bound(in)},
                    {"bias", bounds::bias_bound(in)},
                    {"variance", bounds::variance_bound(in)},
                    {"excursion_sum", bounds::excursion_sum_bound_sup(drift, k.sup_V_C)},
                    {"stationary_f", bounds::stationary_f_bound(k.gamma, k.K)}};
  write_json(c.output_dir / "diagnostics.json", diag);
  run.diagnostics = diag;

  out << "MSC estimates (N = " << N << ", M = " << M << ")\n";
  print_estimates(out, run.result.names, run.result.estimates, run.result.stderrs);
  out << "  mean tau " << run.result.mean_tau << ", skip fraction " << run.result.skip_fraction << ", ess "
      << run.result.ess << '\n';
  return run;
}

LogitSetup load_logit(const RunConfig& c, std::ostream& log) {
  LogitSetup s;
  HeartLoadOptions options;
  options.intercept = c.logit.intercept;
  s.data = load_heart_dataset(c.logit.data_path, options, &s.report);
  log << "heart data: " << s.report.raw_rows << " rows read, " << s.report.dropped_missing
      << " dropped for missing values, " << s.report.kept_rows << " kept\n";
  if (c.logit.intercept && s.data.d() != kReportedHeartCovariates) {
    log << "design has " << s.data.d() << " columns; the reference encoding for this dataset has "
        << kReportedHeartCovariates << " covariates\n";
  }
  if (c.logit.standardize) s.standardization = standardize_columns(s.data);
  const auto d = static_cast<Eigen::Index>(s.data.d());
  s.posterior = std::make_shared<const LogitPosterior>(s.data, c.logit.sigma_scale * Eigen::MatrixXd::Identity(d, d),
                                                       c.logit.h);
  return s;
}

namespace {

json logit_diagnostics(const RunConfig& c, const LogitSetup& s, const LogitModel& model) {
  json diag = {{"schema", kDiagnosticsSchema}};
  diag["data"] = {{"path", c.logit.data_path.string()},
                  {"raw_rows", s.report.raw_rows},
                  {"dropped_missing", s.report.dropped_missing},
                  {"kept_rows", s.report.kept_rows},
                  {"columns", s.data.column_names},
                  {"column_count", s.data.d()},
                  {"reference_covariate_count", kReportedHeartCovariates},
                  {"standardized", c.logit.standardize}};
  if (s.standardization) {
    diag["data"]["standardization"] = {{"means", to_vector(s.standardization->means)},
                                       {"scales", to_vector(s.standardization->scales)}};
  }
  const Eigen::VectorXd& mode = model.posterior().mode();
  diag["map"] = {{"beta", to_vector(mode)},
                 {"gradient_norm", model.posterior().objective_gradient(mode).norm()}};
  return diag;
}

std::vector<ComparisonRow> compare(const std::vector<std::string>& names, const MscResult& r,
                                   const ChainRunResult& g, const ChainRunResult& w) {
  std::vector<ComparisonRow> rows;
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    ComparisonRow row{names[j], r.estimates[j], r.stderrs[j], g.mean[i], g.mcse[i], w.mean[i], w.mcse[i]};
    row.z_msc_gibbs = (row.msc - row.gibbs) / std::hypot(row.msc_stderr, row.gibbs_stderr);
    row.z_msc_rwm = (row.msc - row.rwm) / std::hypot(row.msc_stderr, row.rwm_stderr);
    row.z_gibbs_rwm = (row.gibbs - row.rwm) / std::hypot(row.gibbs_stderr, row.rwm_stderr);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

LogitRun cmd_run_logit(const RunConfig& c, std::ostream& out, std::ostream& log) {
  if (c.sampling.eps) {
    throw ConfigError("config key 'sampling': run-logit needs explicit N and M");
  }
  const auto start = Clock::now();
  const LogitSetup setup = load_logit(c, log);
  const LogitModel model(setup.posterior, c.logit.r);
  prepare_output(c);

  const std::size_t workers = resolve_workers(c.workers);
  const std::uint64_t N = c.sampling.N;
  const std::uint64_t M = c.sampling.M;
  log << "logit model: d = " << setup.data.d() << ", N = " << N << ", M = " << M << ", workers = " << workers
      << '\n';
  const WeightedAtoms atoms = build_initial_distribution(model, N, c.seed, c.workers);
  const auto functions = coordinate_functions(setup.data.d(), setup.data.column_names);
  LogitRun run;
  run.constants = model.constants();
  run.result = msc_estimate(model, atoms, M, functions, c.seed, engine_options(c));
  const double msc_runtime = seconds_since(start);
  if (run.result.ess < 10.0) {
    log << "warning: importance ESS is " << run.result.ess << "; the initial distribution is degenerate\n";
  }

  estimates_table(run.result.names, run.result.estimates, run.result.stderrs).write(c.output_dir / "estimates.csv");
  excursions_table(run.result.taus).write(c.output_dir / "excursions.csv");

  json diag = logit_diagnostics(c, setup, model);
  diag["command"] = "run-logit";
  diag["workers"] = workers;
  diag["result"] = result_json(run.result);
  diag["drift"] = pg_json(run.constants, M, N);
  diag["runtime_seconds"] = {{"msc", msc_runtime}};

  out << "MSC estimates (N = " << N << ", M = " << M << ")\n";
  print_estimates(out, run.result.names, run.result.estimates, run.result.stderrs);
  out << "  mean tau " << run.result.mean_tau << ", ess " << run.result.ess << '\n';

  if (c.compare) {
    const Eigen::VectorXd from = baseline_start(c, model, &atoms, log);
    const std::uint64_t burn = burn_in(c);
    auto t = Clock::now();
    log << "single-chain Gibbs: " << c.baseline.steps << " steps\n";
    run.gibbs = run_single_chain_gibbs(*setup.posterior, c.baseline.steps, burn, from, c.seed);
    const double gibbs_runtime = seconds_since(t);
    t = Clock::now();
    log << "random-walk Metropolis: " << c.baseline.steps << " steps\n";
    run.rwm = run_rwm(*setup.posterior, c.baseline.steps, burn, from, c.seed, rwm_options(c));
    const double rwm_runtime = seconds_since(t);
    run.comparison = compare(run.result.names, run.result, *run.gibbs, *run.rwm);

    CsvTable table(kCompareSchema, {"function", "msc", "msc_stderr", "gibbs", "gibbs_stderr", "rwm", "rwm_stderr",
                                    "z_msc_gibbs", "z_msc_rwm", "z_gibbs_rwm"});
    char buf[200];
    out << "comparison (z = difference / combined stderr)\n";
    for (const auto& r : run.comparison) {
      table.add_row({r.name, format_real(r.msc), format_real(r.msc_stderr), format_real(r.gibbs),
                     format_real(r.gibbs_stderr), format_real(r.rwm), format_real(r.rwm_stderr),
                     format_real(r.z_msc_gibbs), format_real(r.z_msc_rwm), format_real(r.z_gibbs_rwm)});
      std::snprintf(buf, sizeof buf, "  %-12s msc %10.4g  gibbs %10.4g  rwm %10.4g   z %7.2f %7.2f %7.2f\n",
                    r.name.c_str(), r.msc, r.gibbs, r.rwm, r.z_msc_gibbs, r.z_msc_rwm, r.z_gibbs_rwm);
      out << buf;
    }
    table.write(c.output_dir / "compare.csv");
    diag["gibbs"] = chain_json(*run.gibbs);
    diag["rwm"] = chain_json(*run.rwm);
    diag["runtime_seconds"]["gibbs"] = gibbs_runtime;
    diag["runtime_seconds"]["rwm"] = rwm_runtime;
  }
  diag["runtime_seconds"]["total"] = seconds_since(start);
  write_json(c.output_dir / "diagnostics.json", diag);
  run.diagnostics = diag;
  return run;
}

BaselineRun cmd_baseline(const RunConfig& c, BaselineKind kind, std::ostream& out, std::ostream& log) {
  const auto start = Clock::now();
  const LogitSetup setup = load_logit(c, log);
  const LogitModel model(setup.posterior, c.logit.r);
  prepare_output(c);

  BaselineRun run;
  run.names = setup.data.column_names;
  run.start = baseline_start(c, model, nullptr, log);
  const std::uint64_t burn = burn_in(c);
  run.result = kind == BaselineKind::kGibbs
                   ? run_single_chain_gibbs(*setup.posterior, c.baseline.steps, burn, run.start, c.seed)
                   : run_rwm(*setup.posterior, c.baseline.steps, burn, run.start, c.seed, rwm_options(c));
  estimates_table(run.names, run.result.mean, run.result.mcse).write(c.output_dir / "estimates.csv");

  json diag = logit_diagnostics(c, setup, model);
  diag["command"] = kind == BaselineKind::kGibbs ? "baseline-gibbs" : "baseline-rwm";
  diag["chain"] = chain_json(run.result);
  diag["start"] = to_vector(run.start);
  diag["runtime_seconds"] = seconds_since(start);
  write_json(c.output_dir / "diagnostics.json", diag);
  run.diagnostics = diag;

  out << (kind == BaselineKind::kGibbs ? "Gibbs" : "RWM") << " means (" << c.baseline.steps << " steps, burn-in "
      << burn << ")\n";
  print_estimates(out, run.names, to_vector(run.result.mean), to_vector(run.result.mcse));
  if (run.result.acceptance_rate) out << "  acceptance rate " << *run.result.acceptance_rate << '\n';
  return run;
}

std::vector<SelftestRow> cmd_pg_selftest(const RunConfig& c, std::ostream& out, std::ostream& log) {
  prepare_output(c);
  log << "PG self-test: " << c.selftest.draws << " draws per b against a " << c.selftest.oracle_terms
      << "-term series\n";
  const auto rows = pg_selftest(c.selftest, c.seed, c.workers);
  CsvTable table(kSelftestSchema,
                 {"b", "mean", "mean_stderr", "expected_mean", "ks_statistic", "ks_critical", "passed"});
  for (const auto& r : rows) {
    table.add_row({format_real(r.b), format_real(r.mean), format_real(r.mean_stderr), format_real(r.expected_mean),
                   format_real(r.ks_statistic), format_real(r.ks_critical), r.passed ? "1" : "0"});
  }
  table.write(c.output_dir / "estimates.csv");
  out << table.str();
  return rows;
}

}  // namespace msc::cli
