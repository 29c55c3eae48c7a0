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

// sodium-scout: command-line front end.
//
//   sodium-scout recommend     --profile F --scenario F --catalog F [--k 10]
//                              [--meal-fraction 0.3333] [--radius-km 30]
//   sodium-scout run-scenarios --profiles F --scenarios F --catalog F --out DIR
//   sodium-scout gen-catalog   --seed N --restaurants N --items N
//                              --bbox lat1,lon1,lat2,lon2 [--out F]
//   sodium-scout serve         --catalog F --bind HOST:PORT
//
// SIGHUP makes `serve` reload the catalog file.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "sodium_scout.hpp"
#include "sodium_scout/service.hpp"

namespace ss = sodium_scout;

namespace {

std::atomic<bool> g_reload{false};
std::atomic<bool> g_shutdown{false};

extern "C" void on_signal(int sig) {
  if (sig == SIGHUP) {
    g_reload = true;
  } else {
    g_shutdown = true;
  }
}

struct CommonOptions {
  std::string weight_convention = "lbs-activity";
  double penalty_alpha = 0.0;  // 0 = symmetric linear
  std::optional<int> hours_utc_offset;

  ss::ScoringConfig scoring() const {
    ss::ScoringConfig c;
    c.physio.weight_convention = weight_convention == "kg-everywhere" ? ss::WeightConvention::kg_everywhere
                                                                      : ss::WeightConvention::lbs_activity;
    if (penalty_alpha > 0.0) c.penalty = ss::PenaltyModel::asymmetric(penalty_alpha);
    return c;
  }

  ss::CatalogOptions catalog(bool stamp_now) const {
    ss::CatalogOptions o;
    o.hours_utc_offset_minutes = hours_utc_offset;
    if (stamp_now) {
      o.built_at.unix_seconds =
          std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
              .count();
    }
    return o;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--weight-convention", o.weight_convention, "Units for weight in activity terms")
      ->check(CLI::IsMember({"lbs-activity", "kg-everywhere"}));
  cmd->add_option("--penalty-alpha", o.penalty_alpha,
                  "Use the asymmetric penalty with this over-target multiplier (0 = symmetric)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--hours-utc-offset", o.hours_utc_offset, "UTC offset (minutes) the catalog hours are written in");
}

nlohmann::json read_single_object(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ss::Error("io_error", "cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.is_array() && j.size() == 1) return j[0];
  return j;
}

int cmd_recommend(const std::string& profile_file, const std::string& scenario_file, const std::string& catalog_file,
                  std::size_t k, double meal_fraction, double radius_km, const CommonOptions& common) {
  ss::RecommendRequest req;
  req.profile = ss::profile_from_json(read_single_object(profile_file));
  req.scenario = ss::scenario_from_json(read_single_object(scenario_file));
  req.query = {req.scenario.location, req.scenario.query_time, radius_km};
  req.k = k;
  req.meal_fraction = meal_fraction;
  const ss::Catalog catalog = ss::load_catalog_file(catalog_file, common.catalog(false), &std::cerr);
  std::cout << ss::wire::dump(ss::to_json(ss::recommend(req, catalog, common.scoring()))) << '\n';
  return 0;
}

std::vector<double> parse_bbox(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(std::stod(part));
  if (v.size() != 4) throw ss::ValidationError("--bbox needs lat1,lon1,lat2,lon2");
  return v;
}

int cmd_serve(const std::string& catalog_file, const std::string& bind, const CommonOptions& common) {
  const ss::HostPort hp = ss::parse_bind_address(bind);
  auto initial = std::make_shared<const ss::Catalog>(ss::load_catalog_file(catalog_file, common.catalog(true), &std::cerr));
  ss::Service service(initial, common.scoring());

  std::signal(SIGHUP, on_signal);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  std::thread watcher([&] {
    while (!g_shutdown) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      if (g_reload.exchange(false)) {
        try {
          service.catalog().swap(
              std::make_shared<const ss::Catalog>(ss::load_catalog_file(catalog_file, common.catalog(true), &std::cerr)));
          std::cerr << "catalog reloaded: " << service.catalog().snapshot()->version() << '\n';
        } catch (const std::exception& e) {
          std::cerr << "catalog reload failed, keeping previous snapshot: " << e.what() << '\n';
        }
      }
    }
    service.stop();
  });

  std::cerr << "serving " << initial->items().size() << " items on " << hp.host << ":" << hp.port << '\n';
  const bool ok = service.listen(hp.host, hp.port);
  g_shutdown = true;
  watcher.join();
  if (!ok) {
    std::cerr << "error: cannot bind " << bind << '\n';
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-aware sodium-budget meal recommender"};
  app.require_subcommand(1);

  CommonOptions common;

  std::string profile_file, scenario_file, catalog_file, profiles_file, scenarios_file, out_dir, bbox_text, out_file,
      bind;
  std::size_t k = ss::kDefaultK;
  double meal_fraction = ss::kDefaultMealFraction;
  double radius_km = ss::kDefaultRadiusKm;
  std::uint64_t seed = 0;
  std::size_t n_restaurants = 0, n_items = 0;

  auto* rec = app.add_subcommand("recommend", "Rank catalog items for one profile and scenario");
  rec->add_option("--profile", profile_file, "Profile JSON file")->required()->check(CLI::ExistingFile);
  rec->add_option("--scenario", scenario_file, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  rec->add_option("--catalog", catalog_file, "Catalog json-lines file")->required()->check(CLI::ExistingFile);
  rec->add_option("--k", k, "Number of results");
  rec->add_option("--meal-fraction", meal_fraction, "Share of the daily sodium need for this meal");
  rec->add_option("--radius-km", radius_km, "Search radius in km");
  add_common(rec, common);

  auto* run = app.add_subcommand("run-scenarios", "Run every profile x scenario pair and write results");
  run->add_option("--profiles", profiles_file, "JSON array of profiles")->required()->check(CLI::ExistingFile);
  run->add_option("--scenarios", scenarios_file, "JSON array of scenarios")->required()->check(CLI::ExistingFile);
  run->add_option("--catalog", catalog_file, "Catalog json-lines file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--k", k, "Number of results");
  run->add_option("--meal-fraction", meal_fraction, "Share of the daily sodium need for this meal");
  run->add_option("--radius-km", radius_km, "Search radius in km");
  add_common(run, common);

  auto* gen = app.add_subcommand("gen-catalog", "Write a seeded synthetic catalog as json-lines");
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("--restaurants", n_restaurants, "Number of restaurants")->required()->check(CLI::PositiveNumber);
  gen->add_option("--items", n_items, "Items per restaurant")->required()->check(CLI::PositiveNumber);
  gen->add_option("--bbox", bbox_text, "lat1,lon1,lat2,lon2")->required();
  gen->add_option("--out", out_file, "Output file (default stdout)");

  auto* srv = app.add_subcommand("serve", "Serve the HTTP API");
  srv->add_option("--catalog", catalog_file, "Catalog json-lines file")->required()->check(CLI::ExistingFile);
  srv->add_option("--bind", bind, "host:port")->required();
  add_common(srv, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*rec) return cmd_recommend(profile_file, scenario_file, catalog_file, k, meal_fraction, radius_km, common);
    if (*run) {
      ss::RunOptions opts;
      opts.k = k;
      opts.meal_fraction = meal_fraction;
      opts.radius_km = radius_km;
      opts.scoring = common.scoring();
      opts.catalog = common.catalog(false);
      return ss::run_scenarios(profiles_file, scenarios_file, catalog_file, out_dir, opts, std::cerr);
    }
    if (*gen) {
      const auto b = parse_bbox(bbox_text);
      const ss::Catalog c = ss::generate_synthetic_catalog(seed, n_restaurants, n_items, {{b[0], b[1]}, {b[2], b[3]}});
      if (out_file.empty()) {
        ss::save_catalog(c, std::cout);
      } else {
        std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
        ss::save_catalog(c, out);
      }
      return 0;
    }
    if (*srv) return cmd_serve(catalog_file, bind, common);
  } catch (const ss::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
    return e.code() == "io_error" ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
