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

// Loaders for the checked-in fixtures under data/.

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "sodium_scout.hpp"

namespace sodium_scout::testing {

inline std::string data_path(const std::string& name) { return std::string(SODIUM_SCOUT_DATA_DIR) + "/" + name; }

inline std::vector<UserProfile> fixture_users() { return load_profiles(data_path("users.json")); }
inline std::vector<ScenarioInput> fixture_scenarios() { return load_scenarios(data_path("scenarios.json")); }

inline Catalog seed7_catalog() { return load_catalog_file(data_path("catalog_socal_seed7.jsonl"), {}); }

inline RecommendRequest fixture_request(const UserProfile& p, const ScenarioInput& s) {
  RecommendRequest req;
  req.profile = p;
  req.scenario = s;
  req.query = {s.location, s.query_time, kDefaultRadiusKm};
  return req;
}

}  // namespace sodium_scout::testing
