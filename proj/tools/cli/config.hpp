// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: one JSON document per experiment. Unknown keys and out
// of range values are rejected before any computation starts.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace msc::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArSection {
  double rho = 0.9;
  std::size_t d = 2;
  double h = 0.49;
  double r = 1.5;
};

struct LogitSection {
  std::filesystem::path data_path;
  double sigma_scale = 10.0;
  double h = 0.49;
  double r = 1.001;
  bool standardize = false;
  bool intercept = true;
};

struct SamplingSection {
  std::uint64_t N = 100'000;
  std::uint64_t M = 10'000;
  /// When both are set, N and M come from the planner instead.
  std::optional<double> eps;
  std::optional<double> delta;
};

struct PlanSection {
  double eps = 0.1;
  double delta = 0.1;
  std::vector<std::size_t> dims{1, 5, 10, 15, 20, 25, 30};
};

enum class StartMode { kAtom, kProposal, kMode };
enum class RwmShape { kLaplace, kPrior };

struct BaselineSection {
  std::uint64_t steps = 100'000;
  std::optional<std::uint64_t> burn_in;  ///< default: a tenth of steps
  std::optional<double> rwm_scale_override;
  RwmShape rwm_shape = RwmShape::kLaplace;
  StartMode start = StartMode::kAtom;
};

struct SelftestSection {
  std::vector<double> b{0.0, 0.5, 1.0, 3.0};
  std::uint64_t draws = 100'000;
  std::size_t oracle_terms = 1000;
  double ks_level = 0.001;
};

struct RunConfig {
  std::uint64_t seed = 2026;
  std::size_t workers = 0;
  std::filesystem::path output_dir = "msc-out";
  std::uint64_t cap = 1'000'000;
  bool compare = false;
  ArSection ar;
  LogitSection logit;
  SamplingSection sampling;
  PlanSection plan;
  BaselineSection baseline;
  SelftestSection selftest;
};

/// Relative data paths are resolved against `base_dir`.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& config);

/// Default location of the processed Cleveland file, if it was known at build time.
std::filesystem::path default_heart_path();

}  // namespace msc::cli
