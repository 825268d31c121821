// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace msc::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.count(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

std::string path_of(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

double read_real(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path_of(where, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path_of(where, key), "must be finite");
  return x;
}

std::uint64_t read_count(const json& obj, const std::string& where, const char* key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  // Accept 1e5-style literals when they are exact nonnegative integers.
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x >= 0.0 && x == std::floor(x) && x < 1.8e19) return static_cast<std::uint64_t>(x);
  }
  fail(path_of(where, key), "expected a nonnegative integer");
}

bool read_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) fail(path_of(where, key), "expected true or false");
  return obj.at(key).get<bool>();
}

void require(bool ok, const std::string& key, const char* what) {
  if (!ok) fail(key, what);
}

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  return doc.contains(key) ? doc.at(key) : empty;
}

}  // namespace

std::filesystem::path default_heart_path() {
#ifdef MSC_DEFAULT_DATA_DIR
  return std::filesystem::path(MSC_DEFAULT_DATA_DIR) / "processed.cleveland.data";
#else
  return "processed.cleveland.data";
#endif
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  reject_unknown(doc, "", {"seed", "workers", "output_dir", "cap", "compare", "ar", "logit", "sampling",
                           "plan", "baseline", "pg_selftest"});
  RunConfig c;
  c.seed = read_count(doc, "", "seed", c.seed);
  c.workers = read_count(doc, "", "workers", c.workers);
  c.cap = read_count(doc, "", "cap", c.cap);
  require(c.cap >= 1, "cap", "must be at least 1");
  c.compare = read_bool(doc, "", "compare", c.compare);
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) fail("output_dir", "expected a string");
    c.output_dir = doc.at("output_dir").get<std::string>();
  }

  const json& ar = section(doc, "ar");
  reject_unknown(ar, "ar", {"rho", "d", "h", "r"});
  c.ar.rho = read_real(ar, "ar", "rho", c.ar.rho);
  c.ar.d = read_count(ar, "ar", "d", c.ar.d);
  c.ar.h = read_real(ar, "ar", "h", c.ar.h);
  c.ar.r = read_real(ar, "ar", "r", c.ar.r);
  require(c.ar.rho > 0.0 && c.ar.rho < 1.0, "ar.rho", "must lie in (0, 1)");
  require(c.ar.d >= 1, "ar.d", "must be at least 1");
  require(c.ar.h > 0.0, "ar.h", "must be positive");
  require(c.ar.r > 1.0, "ar.r", "must exceed 1");

  const json& lg = section(doc, "logit");
  reject_unknown(lg, "logit", {"data_path", "sigma_scale", "h", "r", "standardize", "intercept"});
  if (lg.contains("data_path")) {
    if (!lg.at("data_path").is_string()) fail("logit.data_path", "expected a string");
    std::filesystem::path p = lg.at("data_path").get<std::string>();
    c.logit.data_path = (p.is_relative() && !base_dir.empty()) ? base_dir / p : p;
  } else {
    c.logit.data_path = default_heart_path();
  }
  c.logit.sigma_scale = read_real(lg, "logit", "sigma_scale", c.logit.sigma_scale);
  c.logit.h = read_real(lg, "logit", "h", c.logit.h);
  c.logit.r = read_real(lg, "logit", "r", c.logit.r);
  c.logit.standardize = read_bool(lg, "logit", "standardize", c.logit.standardize);
  c.logit.intercept = read_bool(lg, "logit", "intercept", c.logit.intercept);
  require(c.logit.sigma_scale > 0.0, "logit.sigma_scale", "must be positive");
  require(c.logit.h > 0.0 && c.logit.h <= 0.5, "logit.h", "must lie in (0, 1/2]");
  require(c.logit.r > 1.0, "logit.r", "must exceed 1");

  const json& sm = section(doc, "sampling");
  reject_unknown(sm, "sampling", {"N", "M", "eps", "delta"});
  c.sampling.N = read_count(sm, "sampling", "N", c.sampling.N);
  c.sampling.M = read_count(sm, "sampling", "M", c.sampling.M);
  if (sm.contains("eps") != sm.contains("delta")) fail("sampling", "eps and delta must be given together");
  if (sm.contains("eps")) {
    if (sm.contains("N") || sm.contains("M")) fail("sampling", "give either N and M or eps and delta");
    c.sampling.eps = read_real(sm, "sampling", "eps", 0.0);
    c.sampling.delta = read_real(sm, "sampling", "delta", 0.0);
    require(*c.sampling.eps > 0.0 && *c.sampling.eps < 1.0, "sampling.eps", "must lie in (0, 1)");
    require(*c.sampling.delta > 0.0 && *c.sampling.delta < 1.0, "sampling.delta", "must lie in (0, 1)");
  }
  require(c.sampling.N >= 1, "sampling.N", "must be at least 1");
  require(c.sampling.M >= 2, "sampling.M", "must be at least 2");

  const json& pl = section(doc, "plan");
  reject_unknown(pl, "plan", {"eps", "delta", "dims"});
  c.plan.eps = read_real(pl, "plan", "eps", c.plan.eps);
  c.plan.delta = read_real(pl, "plan", "delta", c.plan.delta);
  require(c.plan.eps > 0.0 && c.plan.eps < 1.0, "plan.eps", "must lie in (0, 1)");
  require(c.plan.delta > 0.0 && c.plan.delta < 1.0, "plan.delta", "must lie in (0, 1)");
  if (pl.contains("dims")) {
    const json& dims = pl.at("dims");
    if (!dims.is_array() || dims.empty()) fail("plan.dims", "expected a nonempty array");
    c.plan.dims.clear();
    for (const json& v : dims) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) fail("plan.dims", "entries must be positive integers");
      c.plan.dims.push_back(v.get<std::size_t>());
    }
  }

  const json& bl = section(doc, "baseline");
  reject_unknown(bl, "baseline", {"steps", "burn_in", "rwm_scale_override", "rwm_shape", "start"});
  c.baseline.steps = read_count(bl, "baseline", "steps", c.baseline.steps);
  if (bl.contains("burn_in") && !bl.at("burn_in").is_null()) {
    c.baseline.burn_in = read_count(bl, "baseline", "burn_in", 0);
  }
  const std::uint64_t burn = c.baseline.burn_in.value_or(c.baseline.steps / 10);
  require(c.baseline.steps > burn, "baseline.steps", "must exceed burn_in");
  if (bl.contains("rwm_scale_override") && !bl.at("rwm_scale_override").is_null()) {
    c.baseline.rwm_scale_override = read_real(bl, "baseline", "rwm_scale_override", 0.0);
    require(*c.baseline.rwm_scale_override >= 0.0, "baseline.rwm_scale_override", "must be nonnegative");
  }
  if (bl.contains("rwm_shape")) {
    const json& v = bl.at("rwm_shape");
    if (v == "laplace") {
      c.baseline.rwm_shape = RwmShape::kLaplace;
    } else if (v == "prior") {
      c.baseline.rwm_shape = RwmShape::kPrior;
    } else {
      fail("baseline.rwm_shape", "expected \"laplace\" or \"prior\"");
    }
  }
  if (bl.contains("start")) {
    const json& v = bl.at("start");
    if (v == "atom") {
      c.baseline.start = StartMode::kAtom;
    } else if (v == "proposal") {
      c.baseline.start = StartMode::kProposal;
    } else if (v == "mode") {
      c.baseline.start = StartMode::kMode;
    } else {
      fail("baseline.start", "expected \"atom\", \"proposal\" or \"mode\"");
    }
  }

  const json& st = section(doc, "pg_selftest");
  reject_unknown(st, "pg_selftest", {"b", "draws", "oracle_terms", "ks_level"});
  if (st.contains("b")) {
    const json& bs = st.at("b");
    if (!bs.is_array() || bs.empty()) fail("pg_selftest.b", "expected a nonempty array");
    c.selftest.b.clear();
    for (const json& v : bs) {
      if (!v.is_number() || !(v.get<double>() >= 0.0) || !std::isfinite(v.get<double>())) {
        fail("pg_selftest.b", "entries must be finite and nonnegative");
      }
      c.selftest.b.push_back(v.get<double>());
    }
  }
  c.selftest.draws = read_count(st, "pg_selftest", "draws", c.selftest.draws);
  c.selftest.oracle_terms = read_count(st, "pg_selftest", "oracle_terms", c.selftest.oracle_terms);
  c.selftest.ks_level = read_real(st, "pg_selftest", "ks_level", c.selftest.ks_level);
  require(c.selftest.draws >= 2, "pg_selftest.draws", "must be at least 2");
  require(c.selftest.oracle_terms >= 1, "pg_selftest.oracle_terms", "must be at least 1");
  require(c.selftest.ks_level > 0.0 && c.selftest.ks_level < 1.0, "pg_selftest.ks_level", "must lie in (0, 1)");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

nlohmann::json to_json(const RunConfig& c) {
  json doc;
  doc["seed"] = c.seed;
  doc["workers"] = c.workers;
  doc["output_dir"] = c.output_dir.string();
  doc["cap"] = c.cap;
  doc["compare"] = c.compare;
  doc["ar"] = {{"rho", c.ar.rho}, {"d", c.ar.d}, {"h", c.ar.h}, {"r", c.ar.r}};
  doc["logit"] = {{"data_path", c.logit.data_path.string()}, {"sigma_scale", c.logit.sigma_scale},
                  {"h", c.logit.h},
                  {"r", c.logit.r},
                  {"standardize", c.logit.standardize},
                  {"intercept", c.logit.intercept}};
  if (c.sampling.eps) {
    doc["sampling"] = {{"eps", *c.sampling.eps}, {"delta", *c.sampling.delta}};
  } else {
    doc["sampling"] = {{"N", c.sampling.N}, {"M", c.sampling.M}};
  }
  doc["plan"] = {{"eps", c.plan.eps}, {"delta", c.plan.delta}, {"dims", c.plan.dims}};
  json bl = {{"steps", c.baseline.steps},
             {"rwm_shape", c.baseline.rwm_shape == RwmShape::kLaplace ? "laplace" : "prior"}};
  bl["burn_in"] = c.baseline.burn_in ? json(*c.baseline.burn_in) : json(nullptr);
  bl["rwm_scale_override"] = c.baseline.rwm_scale_override ? json(*c.baseline.rwm_scale_override) : json(nullptr);
  bl["start"] = c.baseline.start == StartMode::kAtom ? "atom" : c.baseline.start == StartMode::kProposal ? "proposal" : "mode";
  doc["baseline"] = bl;
  doc["pg_selftest"] = {{"b", c.selftest.b},
                        {"draws", c.selftest.draws},
                        {"oracle_terms", c.selftest.oracle_terms},
                        {"ks_level", c.selftest.ks_level}};
  return doc;
}

}  // namespace msc::cli
