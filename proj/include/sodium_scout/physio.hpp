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

// Physiological model: converts a user's body and activity context into a
// daily energy expenditure and a daily sodium need.
//
// Inputs arrive in the units people actually report (pounds, feet, degrees
// Fahrenheit); the model terms are evaluated as
//
//   km walked      = 0.762 * steps / 1000
//   step kcal      = 0.67 * km * weight
//   stair kcal     = 0.026 * (floors / 3) * weight
//   daily kcal     = BMR(Schofield) + step kcal + stair kcal
//   basic Na  (mg) = 1.2 * daily kcal
//   temp  Na  (mg) = 0.74 * max(0, celsius)
//   alti  Na  (mg) = (max(0, meters) / 300) ^ 2.5
//   total Na  (mg) = basic + temp + alti
//
// Activity terms take weight in pounds by default and Schofield takes
// kilograms; `WeightConvention::kg_everywhere` switches the activity terms to
// kilograms as well.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "sodium_scout/error.hpp"
#include "sodium_scout/geo.hpp"
#include "sodium_scout/time.hpp"

namespace sodium_scout {

enum class Sex { male, female };
enum class Diet { none, vegetarian, vegan };

struct UserProfile {
  std::string user_id;
  double height_cm = 0.0;
  double weight_lbs = 0.0;
  Sex sex = Sex::male;
  int age = 0;
  std::string health_status;  // inert tag, e.g. "N", "O", "MA"
  std::set<std::string> allergens;
  Diet diet = Diet::none;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct ScenarioInput {
  std::string scenario_id;
  std::int64_t steps = 0;
  std::int64_t floors = 0;
  double altitude_ft = 0.0;
  double temperature_f = 0.0;
  Timestamp query_time;
  GeoPoint location;

  friend bool operator==(const ScenarioInput&, const ScenarioInput&) = default;
};

struct SodiumNeed {
  double bmr = 0.0;             // kcal/day
  double step_calories = 0.0;   // kcal
  double stair_calories = 0.0;  // kcal
  double daily_calories = 0.0;  // kcal/day
  double basic_na = 0.0;        // mg
  double temp_na = 0.0;         // mg
  double alti_na = 0.0;         // mg
  double total_na = 0.0;        // mg

  friend bool operator==(const SodiumNeed&, const SodiumNeed&) = default;
};

enum class WeightConvention { lbs_activity, kg_everywhere };

struct PhysioConfig {
  WeightConvention weight_convention = WeightConvention::lbs_activity;
};

inline void validate(const UserProfile& p) {
  if (!(p.height_cm > 0.0)) throw ValidationError("profile '" + p.user_id + "': height must be > 0");
  if (!(p.weight_lbs > 0.0)) throw ValidationError("profile '" + p.user_id + "': weight must be > 0");
  if (p.age < 0) throw ValidationError("profile '" + p.user_id + "': age must be >= 0");
}

inline void validate(const ScenarioInput& s) {
  if (s.steps < 0) throw ValidationError("scenario '" + s.scenario_id + "': steps must be >= 0");
  if (s.floors < 0) throw ValidationError("scenario '" + s.scenario_id + "': floors must be >= 0");
  if (!std::isfinite(s.altitude_ft) || !std::isfinite(s.temperature_f))
    throw ValidationError("scenario '" + s.scenario_id + "': altitude and temperature must be finite");
  validate(s.location);
}

// Unit conversions (exact affine definitions).
constexpr double lbs_to_kg(double pounds) noexcept { return pounds * 0.45359237; }
constexpr double ft_to_m(double feet) noexcept { return feet * 0.3048; }
constexpr double f_to_c(double fahrenheit) noexcept { return (fahrenheit - 32.0) * 5.0 / 9.0; }

// Average stride of 0.762 m.
constexpr double km_walked(std::int64_t steps) noexcept { return 0.762 * static_cast<double>(steps) / 1000.0; }

constexpr double step_calories(double km, double weight) noexcept { return 0.67 * km * weight; }

// One "floor" unit is three flights; real division.
constexpr double stair_calories(double floors, double weight) noexcept {
  return 0.026 * (floors / 3.0) * weight;
}

/// One row of the Schofield weight-only table: BMR = slope * kg + intercept.
struct SchofieldRow {
  int min_age;
  double slope;
  double intercept;
};

namespace detail {

// Age brackets 10-17, 18-29, 30-59, 60+, lower bound inclusive.
inline constexpr SchofieldRow kSchofieldMale[] = {
    {10, 17.686, 658.2}, {18, 15.057, 692.2}, {30, 11.472, 873.1}, {60, 11.711, 587.7}};
inline constexpr SchofieldRow kSchofieldFemale[] = {
    {10, 13.384, 692.6}, {18, 14.818, 486.6}, {30, 8.126, 845.6}, {60, 9.082, 658.5}};

}  // namespace detail

/// Coefficient row that applies to (sex, age). Throws UnsupportedAge below 10.
inline const SchofieldRow& schofield_row(Sex sex, int age) {
  const auto& table = sex == Sex::male ? detail::kSchofieldMale : detail::kSchofieldFemale;
  if (age < table[0].min_age) throw UnsupportedAge(age);
  const SchofieldRow* row = &table[0];
  for (const auto& r : table) {
    if (age >= r.min_age) row = &r;
  }
  return *row;
}

/// Basal metabolic rate in kcal/day from the published Schofield table.
inline double schofield_bmr(Sex sex, int age, double weight_kg) {
  const SchofieldRow& row = schofield_row(sex, age);
  return row.slope * weight_kg + row.intercept;
}

// Clamped at zero: a need cannot be negative.
inline double temp_na(double celsius) noexcept { return std::max(0.0, 0.74 * celsius); }

inline double alti_na(double meters) noexcept { return std::pow(std::max(0.0, meters) / 300.0, 2.5); }

/// Evaluates every term of the model for one (profile, scenario) pair.
///
/// Errors: UnsupportedAge (tagged with the profile's user_id) when the
/// profile is younger than 10; ValidationError when either input breaks its
/// invariants.
inline SodiumNeed sodium_need(const UserProfile& profile, const ScenarioInput& scenario,
                              const PhysioConfig& config = {}) {
  validate(profile);
  validate(scenario);
  if (profile.age < detail::kSchofieldMale[0].min_age) throw UnsupportedAge(profile.age, profile.user_id);

  const double weight_kg = lbs_to_kg(profile.weight_lbs);
  const double activity_weight =
      config.weight_convention == WeightConvention::lbs_activity ? profile.weight_lbs : weight_kg;

  SodiumNeed n;
  n.bmr = schofield_bmr(profile.sex, profile.age, weight_kg);
  n.step_calories = step_calories(km_walked(scenario.steps), activity_weight);
  n.stair_calories = stair_calories(static_cast<double>(scenario.floors), activity_weight);
  n.daily_calories = n.bmr + n.step_calories + n.stair_calories;
  n.basic_na = 1.2 * n.daily_calories;
  n.temp_na = temp_na(f_to_c(scenario.temperature_f));
  n.alti_na = alti_na(ft_to_m(scenario.altitude_ft));
  n.total_na = n.basic_na + n.temp_na + n.alti_na;
  return n;
}

inline double daily_calories(const UserProfile& profile, const ScenarioInput& scenario,
                             const PhysioConfig& config = {}) {
  return sodium_need(profile, scenario, config).daily_calories;
}

inline std::string_view to_string(Sex s) noexcept { return s == Sex::male ? "male" : "female"; }

inline std::string_view to_string(Diet d) noexcept {
  switch (d) {
    case Diet::vegetarian:
      return "vegetarian";
    case Diet::vegan:
      return "vegan";
    case Diet::none:
      break;
  }
  return "none";
}

inline std::string_view to_string(WeightConvention w) noexcept {
  return w == WeightConvention::lbs_activity ? "lbs-activity" : "kg-everywhere";
}

}  // namespace sodium_scout
