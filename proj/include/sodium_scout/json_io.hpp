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

// JSON codecs for the request/response types and the byte-stable wire
// writer (compact, insertion-ordered keys, floats fixed at 4 decimals).

#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sodium_scout/catalog.hpp"
#include "sodium_scout/context_filters.hpp"
#include "sodium_scout/error.hpp"
#include "sodium_scout/physio.hpp"
#include "sodium_scout/ranking.hpp"

namespace sodium_scout {

using ordered_json = nlohmann::ordered_json;

// Structurally invalid request body (HTTP 400).
class MalformedRequest : public Error {
 public:
  explicit MalformedRequest(const std::string& what) : Error("malformed", what) {}
};

namespace wire {

inline void append_fixed4(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 4);
  std::string_view s(buf, static_cast<std::size_t>(ptr - buf));
  if (s == "-0.0000") s = "0.0000";
  out += s;
}

inline void append(const ordered_json& j, std::string& out) {
  switch (j.type()) {
    case ordered_json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += ordered_json(it.key()).dump();
        out += ':';
        append(it.value(), out);
      }
      out += '}';
      break;
    }
    case ordered_json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        append(v, out);
      }
      out += ']';
      break;
    }
    case ordered_json::value_t::number_float:
      append_fixed4(j.get<double>(), out);
      break;
    default:
      out += j.dump();
  }
}

inline std::string dump(const ordered_json& j) {
  std::string out;
  append(j, out);
  return out;
}

}  // namespace wire

// ---------------------------------------------------------------------------
// Decoding helpers

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, std::string_view ctx, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw MalformedRequest(std::string(ctx) + ": missing field '" + key + "'");
  return *it;
}

inline double number_field(const nlohmann::json& j, std::string_view ctx, const char* key) {
  const auto& v = field(j, ctx, key);
  if (!v.is_number()) throw MalformedRequest(std::string(ctx) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

inline std::int64_t integer_field(const nlohmann::json& j, std::string_view ctx, const char* key) {
  const auto& v = field(j, ctx, key);
  if (!v.is_number_integer()) throw MalformedRequest(std::string(ctx) + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::string string_field(const nlohmann::json& j, std::string_view ctx, const char* key) {
  const auto& v = field(j, ctx, key);
  if (!v.is_string()) throw MalformedRequest(std::string(ctx) + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline void require_object(const nlohmann::json& j, std::string_view ctx) {
  if (!j.is_object()) throw MalformedRequest(std::string(ctx) + " must be a JSON object");
}

inline GeoPoint point_field(const nlohmann::json& j, std::string_view ctx, const char* key) {
  const auto& v = field(j, ctx, key);
  require_object(v, std::string(ctx) + "." + key);
  return {number_field(v, ctx, "lat"), number_field(v, ctx, "lon")};
}

inline Timestamp time_field(const nlohmann::json& j, std::string_view ctx, const char* key) {
  const std::string s = string_field(j, ctx, key);
  try {
    return parse_timestamp(s);
  } catch (const ValidationError& e) {
    throw MalformedRequest(std::string(ctx) + ": " + e.what());
  }
}

inline ordered_json point_json(const GeoPoint& p) {
  ordered_json j;
  j["lat"] = p.lat;
  j["lon"] = p.lon;
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Profiles and scenarios

inline UserProfile profile_from_json(const nlohmann::json& j) {
  constexpr std::string_view ctx = "profile";
  detail::require_object(j, ctx);
  UserProfile p;
  p.user_id = detail::string_field(j, ctx, "user_id");
  p.height_cm = detail::number_field(j, ctx, "height");
  p.weight_lbs = detail::number_field(j, ctx, "weight");
  const std::string sex = detail::string_field(j, ctx, "sex");
  if (sex == "male") {
    p.sex = Sex::male;
  } else if (sex == "female") {
    p.sex = Sex::female;
  } else {
    throw MalformedRequest("profile: sex must be 'male' or 'female'");
  }
  p.age = static_cast<int>(detail::integer_field(j, ctx, "age"));
  if (auto it = j.find("health_status"); it != j.end()) {
    if (!it->is_string()) throw MalformedRequest("profile: health_status must be a string");
    p.health_status = it->get<std::string>();
  }
  if (auto it = j.find("allergens"); it != j.end()) {
    if (!it->is_array()) throw MalformedRequest("profile: allergens must be a list");
    for (const auto& a : *it) {
      if (!a.is_string()) throw MalformedRequest("profile: allergens must hold strings");
      p.allergens.insert(to_lower(a.get<std::string>()));
    }
  }
  if (auto it = j.find("diet"); it != j.end()) {
    const std::string d = it->is_string() ? it->get<std::string>() : std::string{};
    if (d == "none") {
      p.diet = Diet::none;
    } else if (d == "vegetarian") {
      p.diet = Diet::vegetarian;
    } else if (d == "vegan") {
      p.diet = Diet::vegan;
    } else {
      throw MalformedRequest("profile: diet must be one of none, vegetarian, vegan");
    }
  }
  return p;
}

inline ordered_json to_json(const UserProfile& p) {
  ordered_json j;
  j["user_id"] = p.user_id;
  j["height"] = p.height_cm;
  j["weight"] = p.weight_lbs;
  j["sex"] = to_string(p.sex);
  j["age"] = p.age;
  j["health_status"] = p.health_status;
  j["allergens"] = p.allergens;
  j["diet"] = to_string(p.diet);
  return j;
}

inline ScenarioInput scenario_from_json(const nlohmann::json& j) {
  constexpr std::string_view ctx = "scenario";
  detail::require_object(j, ctx);
  ScenarioInput s;
  if (auto it = j.find("scenario_id"); it != j.end()) {
    if (!it->is_string()) throw MalformedRequest("scenario: scenario_id must be a string");
    s.scenario_id = it->get<std::string>();
  }
  s.steps = detail::integer_field(j, ctx, "steps");
  s.floors = detail::integer_field(j, ctx, "floors");
  s.altitude_ft = detail::number_field(j, ctx, "altitude");
  s.temperature_f = detail::number_field(j, ctx, "temperature");
  s.query_time = detail::time_field(j, ctx, "query_time");
  s.location = detail::point_field(j, ctx, "location");
  return s;
}

inline ordered_json to_json(const ScenarioInput& s) {
  ordered_json j;
  j["scenario_id"] = s.scenario_id;
  j["steps"] = s.steps;
  j["floors"] = s.floors;
  j["altitude"] = s.altitude_ft;
  j["temperature"] = s.temperature_f;
  j["query_time"] = format_timestamp(s.query_time);
  j["location"] = detail::point_json(s.location);
  return j;
}

// Missing fields fall back to the scenario's location and time and a 30 km
// radius.
inline QueryContext query_from_json(const nlohmann::json* j, const ScenarioInput& scenario) {
  QueryContext q{scenario.location, scenario.query_time, kDefaultRadiusKm};
  if (j == nullptr || j->is_null()) return q;
  constexpr std::string_view ctx = "query";
  detail::require_object(*j, ctx);
  if (j->contains("user_location")) q.user_location = detail::point_field(*j, ctx, "user_location");
  if (j->contains("query_time")) q.query_time = detail::time_field(*j, ctx, "query_time");
  if (j->contains("radius_km")) q.radius_km = detail::number_field(*j, ctx, "radius_km");
  return q;
}

inline ordered_json to_json(const QueryContext& q) {
  ordered_json j;
  j["user_location"] = detail::point_json(q.user_location);
  j["query_time"] = format_timestamp(q.query_time);
  j["radius_km"] = q.radius_km;
  return j;
}

// ---------------------------------------------------------------------------
// Results

inline ordered_json to_json(const SodiumNeed& n) {
  ordered_json j;
  j["bmr"] = n.bmr;
  j["step_calories"] = n.step_calories;
  j["stair_calories"] = n.stair_calories;
  j["daily_calories"] = n.daily_calories;
  j["basic_na"] = n.basic_na;
  j["temp_na"] = n.temp_na;
  j["alti_na"] = n.alti_na;
  j["total_na"] = n.total_na;
  return j;
}

inline ordered_json to_json(const MealBudget& b) {
  ordered_json j;
  j["target_mg"] = b.target_mg;
  j["source_total_mg"] = b.source_total_mg;
  j["meal_fraction"] = b.meal_fraction;
  return j;
}

inline ordered_json to_json(const RankedEntry& e) {
  ordered_json j;
  j["item_id"] = e.item_id;
  j["restaurant_id"] = e.restaurant_id;
  j["name"] = e.name;
  j["score"] = e.score;
  j["sodium_mg"] = e.sodium_mg;
  j["distance_km"] = e.distance_km;
  return j;
}

inline ordered_json to_json(const RankedList& list) {
  ordered_json j = ordered_json::array();
  for (const auto& e : list) j.push_back(to_json(e));
  return j;
}

inline ordered_json to_json(const FilterReport& r) {
  ordered_json j;
  j["input_count"] = r.input_count;
  j["passed_count"] = r.passed_count;
  ordered_json ex = ordered_json::array();
  for (const auto& e : r.exclusions) {
    ordered_json x;
    x["item_id"] = e.item_id;
    x["reason"] = to_string(e.reason);
    ex.push_back(std::move(x));
  }
  j["exclusions"] = std::move(ex);
  return j;
}

inline ordered_json to_json(const MenuItem& item) { return detail::item_record(item); }

inline ordered_json error_json(std::string_view code, std::string_view message) {
  ordered_json j;
  j["code"] = code;
  j["message"] = message;
  return j;
}

}  // namespace sodium_scout
