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

// Static pre-filters applied before scoring:
//   exogenous  - restaurant open at the query time and within the radius
//   endogenous - no allergen overlap with the user, diet-compatible
// plus the context-signal taxonomy (layer x change rate x observability).

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sodium_scout/catalog.hpp"
#include "sodium_scout/geo.hpp"
#include "sodium_scout/physio.hpp"
#include "sodium_scout/time.hpp"

namespace sodium_scout {

inline constexpr double kDefaultRadiusKm = 30.0;

struct QueryContext {
  GeoPoint user_location;
  Timestamp query_time;
  double radius_km = kDefaultRadiusKm;

  friend bool operator==(const QueryContext&, const QueryContext&) = default;
};

inline void validate(const QueryContext& q) {
  validate(q.user_location);
  if (!(q.radius_km > 0.0)) throw ValidationError("radius_km must be > 0");
}

// ---------------------------------------------------------------------------
// Context-signal taxonomy

enum class Layer { endogenous, exogenous };
enum class ChangeRate { static_rate, dynamic_rate };
enum class Observability { fully, partially, unobservable };

struct SignalValue {
  double value = 0.0;
  std::string unit;

  friend bool operator==(const SignalValue&, const SignalValue&) = default;
};

struct ContextSignal {
  std::string name;
  Layer layer = Layer::endogenous;
  ChangeRate rate = ChangeRate::static_rate;
  Observability observability = Observability::fully;
  std::optional<SignalValue> value;  // absent iff unobservable

  bool well_formed() const noexcept { return (observability == Observability::unobservable) != value.has_value(); }
};

inline std::string_view to_string(Layer l) noexcept { return l == Layer::endogenous ? "endogenous" : "exogenous"; }
inline std::string_view to_string(ChangeRate r) noexcept {
  return r == ChangeRate::static_rate ? "static" : "dynamic";
}
inline std::string_view to_string(Observability o) noexcept {
  switch (o) {
    case Observability::fully:
      return "fully";
    case Observability::partially:
      return "partially";
    case Observability::unobservable:
      break;
  }
  return "unobservable";
}

// The signals one request carries, tagged on the three axes. The user's
// actual sodium balance is listed as unobservable: it is what the physio
// model estimates.
inline std::vector<ContextSignal> context_signals(const UserProfile& p, const ScenarioInput& s) {
  using L = Layer;
  using R = ChangeRate;
  using O = Observability;
  return {
      {"weight", L::endogenous, R::static_rate, O::fully, SignalValue{p.weight_lbs, "lb"}},
      {"height", L::endogenous, R::static_rate, O::fully, SignalValue{p.height_cm, "cm"}},
      {"age", L::endogenous, R::static_rate, O::fully, SignalValue{static_cast<double>(p.age), "year"}},
      {"allergen_count", L::endogenous, R::static_rate, O::fully,
       SignalValue{static_cast<double>(p.allergens.size()), "count"}},
      {"steps", L::endogenous, R::dynamic_rate, O::partially, SignalValue{static_cast<double>(s.steps), "count"}},
      {"floors", L::endogenous, R::dynamic_rate, O::partially, SignalValue{static_cast<double>(s.floors), "count"}},
      {"sodium_balance", L::endogenous, R::dynamic_rate, O::unobservable, std::nullopt},
      {"altitude", L::exogenous, R::dynamic_rate, O::fully, SignalValue{s.altitude_ft, "ft"}},
      {"temperature", L::exogenous, R::dynamic_rate, O::fully, SignalValue{s.temperature_f, "degF"}},
      {"latitude", L::exogenous, R::dynamic_rate, O::fully, SignalValue{s.location.lat, "deg"}},
      {"longitude", L::exogenous, R::dynamic_rate, O::fully, SignalValue{s.location.lon, "deg"}},
  };
}

// ---------------------------------------------------------------------------
// Filters

// Declaration order is the reporting priority for items failing several
// predicates.
enum class ExclusionReason { closed, out_of_radius, allergen, diet };

inline std::string_view to_string(ExclusionReason r) noexcept {
  switch (r) {
    case ExclusionReason::closed:
      return "closed";
    case ExclusionReason::out_of_radius:
      return "out_of_radius";
    case ExclusionReason::allergen:
      return "allergen";
    case ExclusionReason::diet:
      break;
  }
  return "diet";
}

struct Exclusion {
  std::string item_id;
  ExclusionReason reason;

  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

struct FilterReport {
  std::size_t input_count = 0;
  std::size_t passed_count = 0;
  std::vector<Exclusion> exclusions;

  friend bool operator==(const FilterReport&, const FilterReport&) = default;
};

// Non-owning views into a catalog snapshot; the catalog must outlive them.
using ItemRefs = std::vector<const MenuItem*>;

template <typename T>
struct Filtered {
  T items;
  FilterReport report;
};

// Open minute inclusive, close minute exclusive. No hours means never open.
inline bool is_open(const Restaurant& r, const Timestamp& t, std::optional<int> hours_utc_offset_minutes = std::nullopt) {
  const WeekMinute wm = local_week_minute(t, hours_utc_offset_minutes);
  for (const auto& iv : r.hours) {
    if (iv.day == wm.day && wm.minute >= iv.open_min && wm.minute < iv.close_min) return true;
  }
  return false;
}

inline bool within_radius(const Restaurant& r, const QueryContext& ctx) {
  return haversine_km(ctx.user_location, r.location) <= ctx.radius_km;
}

inline bool allergen_safe(const MenuItem& item, const UserProfile& p) {
  for (const auto& a : item.allergens) {
    if (p.allergens.count(a)) return false;
  }
  return true;
}

inline bool diet_compatible(const MenuItem& item, const UserProfile& p) {
  switch (p.diet) {
    case Diet::vegetarian:
      return item.has_tag("vegetarian");
    case Diet::vegan:
      return item.has_tag("vegan");
    case Diet::none:
      break;
  }
  return true;
}

inline std::optional<ExclusionReason> exogenous_failure(const MenuItem& item, const Catalog& catalog,
                                                        const QueryContext& ctx) {
  const Restaurant& r = catalog.restaurant_of(item);
  if (!is_open(r, ctx.query_time, catalog.hours_utc_offset_minutes())) return ExclusionReason::closed;
  if (!within_radius(r, ctx)) return ExclusionReason::out_of_radius;
  return std::nullopt;
}

inline std::optional<ExclusionReason> endogenous_failure(const MenuItem& item, const UserProfile& p) {
  if (!allergen_safe(item, p)) return ExclusionReason::allergen;
  if (!diet_compatible(item, p)) return ExclusionReason::diet;
  return std::nullopt;
}

namespace detail {

template <typename Pred>
Filtered<ItemRefs> apply_filter(std::span<const MenuItem* const> items, Pred&& failure) {
  Filtered<ItemRefs> out;
  out.report.input_count = items.size();
  for (const MenuItem* item : items) {
    if (auto reason = failure(*item)) {
      out.report.exclusions.push_back({item->item_id, *reason});
    } else {
      out.items.push_back(item);
    }
  }
  out.report.passed_count = out.items.size();
  return out;
}

}  // namespace detail

/// Keeps items whose restaurant is open at ctx.query_time and lies within
/// ctx.radius_km. Input order is preserved.
inline Filtered<ItemRefs> filter_exogenous(std::span<const MenuItem* const> items, const Catalog& catalog,
                                           const QueryContext& ctx) {
  return detail::apply_filter(items, [&](const MenuItem& i) { return exogenous_failure(i, catalog, ctx); });
}

/// Drops items sharing an allergen with the profile or outside its diet.
inline Filtered<ItemRefs> filter_endogenous(std::span<const MenuItem* const> items, const UserProfile& profile) {
  return detail::apply_filter(items, [&](const MenuItem& i) { return endogenous_failure(i, profile); });
}

// Report for `first` then `second`, where `second` ran on first's survivors.
inline FilterReport merge_reports(const FilterReport& first, const FilterReport& second) {
  FilterReport out;
  out.input_count = first.input_count;
  out.passed_count = second.passed_count;
  out.exclusions = first.exclusions;
  out.exclusions.insert(out.exclusions.end(), second.exclusions.begin(), second.exclusions.end());
  return out;
}

}  // namespace sodium_scout
