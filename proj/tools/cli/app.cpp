// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli/app.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "msc/errors.hpp"

namespace msc::cli {
namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> output_dir;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("config", o.config_path, "JSON run configuration")->required();
  sub->add_option("--seed", o.seed, "override the master seed");
  sub->add_option("--workers", o.workers, "override the worker count (0 = all cores)");
  sub->add_option("--output-dir", o.output_dir, "override the output directory");
}

std::size_t parse_env_workers(const char* text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used == std::string(text).size()) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string(kWorkersEnv) + " must be a nonnegative integer, got '" + text + "'");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = load_config(o.config_path);
  if (const char* env = std::getenv(kWorkersEnv); env && *env) c.workers = parse_env_workers(env);
  if (o.seed) c.seed = *o.seed;
  if (o.workers) c.workers = *o.workers;
  if (o.output_dir) c.output_dir = *o.output_dir;
  return c;
}

}  // namespace

int run_app(int argc, char** argv) { return run_app(argc, argv, std::cout, std::cerr); }

int run_app(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Many-short-chains Monte Carlo estimation"};
  app.require_subcommand(1);
  Overrides o;
  CLI::App* plan = app.add_subcommand("plan", "sample sizes over a dimension sweep of the AR model");
  CLI::App* run_ar = app.add_subcommand("run-ar", "MSC estimate of the AR(1) invariant mean");
  CLI::App* run_logit = app.add_subcommand("run-logit", "MSC estimate of the logistic posterior mean");
  CLI::App* gibbs = app.add_subcommand("baseline-gibbs", "single-chain Polya-Gamma Gibbs baseline");
  CLI::App* rwm = app.add_subcommand("baseline-rwm", "single-chain random-walk Metropolis baseline");
  CLI::App* selftest = app.add_subcommand("pg-selftest", "check the Polya-Gamma sampler against a series oracle");
  for (CLI::App* sub : {plan, run_ar, run_logit, gibbs, rwm, selftest}) add_common(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const RunConfig c = resolve(o);
    if (plan->parsed()) {
      cmd_plan(c, out, err);
    } else if (run_ar->parsed()) {
      cmd_run_ar(c, out, err);
    } else if (run_logit->parsed()) {
      cmd_run_logit(c, out, err);
    } else if (gibbs->parsed()) {
      cmd_baseline(c, BaselineKind::kGibbs, out, err);
    } else if (rwm->parsed()) {
      cmd_baseline(c, BaselineKind::kRwm, out, err);
    } else if (selftest->parsed()) {
      const auto rows = cmd_pg_selftest(c, out, err);
      for (const auto& r : rows) {
        if (!r.passed) {
          err << "error: PG self-test failed at b = " << r.b << '\n';
          return kExitEngine;
        }
      }
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitEngine;
  }
}

}  // namespace msc::cli
