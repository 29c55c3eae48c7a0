// Copyright 2026 The Sodium Scout Authors
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

// Recommendation pipeline: exogenous filter -> endogenous filter -> sodium
// need -> meal budget -> health score -> top-k. Also the batch scenario
// runner behind `sodium-scout run-scenarios`.

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sodium_scout/catalog.hpp"
#include "sodium_scout/context_filters.hpp"
#include "sodium_scout/json_io.hpp"
#include "sodium_scout/physio.hpp"
#include "sodium_scout/ranking.hpp"

namespace sodium_scout {

inline constexpr std::size_t kDefaultK = 10;

struct RecommendRequest {
  UserProfile profile;
  ScenarioInput scenario;
  QueryContext query;
  std::size_t k = kDefaultK;
  double meal_fraction = kDefaultMealFraction;
};

struct RecommendResponse {
  SodiumNeed sodium_need;
  MealBudget budget;
  RankedList results;
  FilterReport filter_report;
  std::string catalog_version;
};

inline RecommendResponse recommend(const RecommendRequest& req, const Catalog& catalog,
                                   const ScoringConfig& config = {}) {
  validate(req.profile);
  validate(req.scenario);
  validate(req.query);

  const ItemRefs all = catalog.item_refs();
  auto exo = filter_exogenous(all, catalog, req.query);
  auto endo = filter_endogenous(exo.items, req.profile);

  RecommendResponse resp;
  resp.filter_report = merge_reports(exo.report, endo.report);
  resp.sodium_need = sodium_need(req.profile, req.scenario, config.physio);
  resp.budget = meal_budget(resp.sodium_need, req.meal_fraction);

  std::vector<double> scores;
  std::vector<double> distances;
  scores.reserve(endo.items.size());
  distances.reserve(endo.items.size());
  for (const MenuItem* item : endo.items) {
    scores.push_back(health_score(item->sodium_mg, resp.budget, config.penalty));
    distances.push_back(haversine_km(req.query.user_location, catalog.restaurant_of(*item).location));
  }
  resp.results = top_k(scores, endo.items, req.k, distances);
  resp.catalog_version = catalog.version();
  return resp;
}

// ---------------------------------------------------------------------------
// JSON

inline RecommendRequest request_from_json(const nlohmann::json& j) {
  detail::require_object(j, "request");
  RecommendRequest req;
  req.profile = profile_from_json(detail::field(j, "request", "profile"));
  req.scenario = scenario_from_json(detail::field(j, "request", "scenario"));
  auto q = j.find("query");
  req.query = query_from_json(q == j.end() ? nullptr : &*q, req.scenario);
  if (j.contains("k")) {
    const auto k = detail::integer_field(j, "request", "k");
    if (k < 0) throw ValidationError("k must be >= 0");
    req.k = static_cast<std::size_t>(k);
  }
  if (j.contains("meal_fraction")) req.meal_fraction = detail::number_field(j, "request", "meal_fraction");
  return req;
}

inline ordered_json to_json(const RecommendRequest& req) {
  ordered_json j;
  j["profile"] = to_json(req.profile);
  j["scenario"] = to_json(req.scenario);
  j["query"] = to_json(req.query);
  j["k"] = req.k;
  j["meal_fraction"] = req.meal_fraction;
  return j;
}

inline ordered_json to_json(const RecommendResponse& r) {
  ordered_json j;
  j["sodium_need"] = to_json(r.sodium_need);
  j["budget"] = to_json(r.budget);
  j["results"] = to_json(r.results);
  j["filter_report"] = to_json(r.filter_report);
  j["catalog_version"] = r.catalog_version;
  return j;
}

// ---------------------------------------------------------------------------
// Batch runner

struct RunOptions {
  std::size_t k = kDefaultK;
  double meal_fraction = kDefaultMealFraction;
  double radius_km = kDefaultRadiusKm;
  ScoringConfig scoring;
  CatalogOptions catalog;
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline nlohmann::json read_json_array(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return nlohmann::json::array();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedRequest(path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw MalformedRequest(path.string() + ": expected a JSON array");
  return j;
}

// Keeps [A-Za-z0-9._-]; anything else becomes '_'.
inline std::string file_stem(const std::string& id) {
  std::string out = id.empty() ? std::string("_") : id;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
  out.flush();
  if (!out) throw Error("io_error", "cannot write " + path.string());
}

}  // namespace detail

inline std::vector<UserProfile> load_profiles(const std::filesystem::path& path) {
  std::vector<UserProfile> out;
  std::set<std::string> seen;
  for (const auto& j : detail::read_json_array(path)) {
    out.push_back(profile_from_json(j));
    validate(out.back());
    if (!seen.insert(out.back().user_id).second)
      throw ValidationError("duplicate user_id '" + out.back().user_id + "'");
  }
  return out;
}

inline std::vector<ScenarioInput> load_scenarios(const std::filesystem::path& path) {
  std::vector<ScenarioInput> out;
  std::set<std::string> seen;
  for (const auto& j : detail::read_json_array(path)) {
    out.push_back(scenario_from_json(j));
    validate(out.back());
    if (out.back().scenario_id.empty()) throw ValidationError("scenario without scenario_id");
    if (!seen.insert(out.back().scenario_id).second)
      throw ValidationError("duplicate scenario_id '" + out.back().scenario_id + "'");
  }
  return out;
}

inline Catalog load_catalog_file(const std::filesystem::path& path, const CatalogOptions& options,
                                 std::ostream* warnings = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot open " + path.string());
  LoadResult r = load_catalog(in, options);
  if (warnings) {
    for (const auto& w : r.warnings) *warnings << "warning: " << path.string() << ": " << w << '\n';
  }
  return std::move(r.catalog);
}

/// Runs every (user, scenario) pair. Writes `<user>__<scenario>.json` per
/// pair and `summary.csv` (user_id, scenario_id, daily_calories, basic_na,
/// total_na rounded to integers). Returns 0 on success, 2 on input errors
/// and 3 on I/O failures; diagnostics go to `err`.
inline int run_scenarios(const std::filesystem::path& profiles_file, const std::filesystem::path& scenarios_file,
                         const std::filesystem::path& catalog_file, const std::filesystem::path& out_dir,
                         const RunOptions& options, std::ostream& err) {
  try {
    const auto profiles = load_profiles(profiles_file);
    const auto scenarios = load_scenarios(scenarios_file);
    const Catalog catalog = load_catalog_file(catalog_file, options.catalog, &err);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error("io_error", "cannot create " + out_dir.string() + ": " + ec.message());

    std::string summary = "user_id,scenario_id,daily_calories,basic_na,total_na\n";
    for (const auto& profile : profiles) {
      for (const auto& scenario : scenarios) {
        RecommendRequest req;
        req.profile = profile;
        req.scenario = scenario;
        req.query = {scenario.location, scenario.query_time, options.radius_km};
        req.k = options.k;
        req.meal_fraction = options.meal_fraction;
        const RecommendResponse resp = recommend(req, catalog, options.scoring);

        ordered_json doc;
        doc["user_id"] = profile.user_id;
        doc["scenario_id"] = scenario.scenario_id;
        doc["response"] = to_json(resp);
        const std::string name = detail::file_stem(profile.user_id) + "__" + detail::file_stem(scenario.scenario_id);
        detail::write_file(out_dir / (name + ".json"), wire::dump(doc) + "\n");

        summary += profile.user_id + "," + scenario.scenario_id + "," +
                   std::to_string(std::llround(resp.sodium_need.daily_calories)) + "," +
                   std::to_string(std::llround(resp.sodium_need.basic_na)) + "," +
                   std::to_string(std::llround(resp.sodium_need.total_na)) + "\n";
      }
    }
    detail::write_file(out_dir / "summary.csv", summary);
    return 0;
  } catch (const Error& e) {
    err << "error [" << e.code() << "]: " << e.what() << '\n';
    return e.code() == "io_error" ? 3 : 2;
  }
}

}  // namespace sodium_scout
