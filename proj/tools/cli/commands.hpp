// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment commands. Each writes its files into config.output_dir, prints
// a short report to `out` and progress notes to `log`, and returns what it
// computed so callers can inspect results without re-reading the files.
#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/selftest.hpp"
#include "json.hpp"
#include "msc/baselines.hpp"
#include "msc/bounds.hpp"
#include "msc/engine.hpp"
#include "msc/heart_data.hpp"
#include "msc/logit_model.hpp"

namespace msc::cli {

struct PlanRow {
  std::size_t d = 0;
  double gamma = 0.0;
  double K = 0.0;
  double R = 0.0;
  double gamma_R = 0.0;
  double w2 = 0.0;
  std::uint64_t N = 0;
  std::uint64_t M = 0;
};

std::vector<PlanRow> plan_rows(const RunConfig& config);
std::vector<PlanRow> cmd_plan(const RunConfig& config, std::ostream& out, std::ostream& log);

struct ArRun {
  MscResult result;
  bounds::ArConstants constants;
  nlohmann::json diagnostics;
};

ArRun cmd_run_ar(const RunConfig& config, std::ostream& out, std::ostream& log);

struct LogitSetup {
  Dataset data;
  HeartLoadReport report;
  std::optional<Standardization> standardization;
  std::shared_ptr<const LogitPosterior> posterior;
};

LogitSetup load_logit(const RunConfig& config, std::ostream& log);

struct ComparisonRow {
  std::string name;
  double msc = 0.0, msc_stderr = 0.0;
  double gibbs = 0.0, gibbs_stderr = 0.0;
  double rwm = 0.0, rwm_stderr = 0.0;
  double z_msc_gibbs = 0.0, z_msc_rwm = 0.0, z_gibbs_rwm = 0.0;
};

struct LogitRun {
  MscResult result;
  bounds::PgConstants constants;
  std::optional<ChainRunResult> gibbs;
  std::optional<ChainRunResult> rwm;
  std::vector<ComparisonRow> comparison;
  nlohmann::json diagnostics;
};

LogitRun cmd_run_logit(const RunConfig& config, std::ostream& out, std::ostream& log);

enum class BaselineKind { kGibbs, kRwm };

struct BaselineRun {
  ChainRunResult result;
  std::vector<std::string> names;
  Eigen::VectorXd start;
  nlohmann::json diagnostics;
};

BaselineRun cmd_baseline(const RunConfig& config, BaselineKind kind, std::ostream& out, std::ostream& log);

std::vector<SelftestRow> cmd_pg_selftest(const RunConfig& config, std::ostream& out, std::ostream& log);

}  // namespace msc::cli
