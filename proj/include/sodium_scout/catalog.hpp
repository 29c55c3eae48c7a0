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

// Restaurant and menu-item catalog: in-memory snapshot, json-lines codec and
// a seeded synthetic generator.
//
// File format (UTF-8, one JSON object per line):
//   {"kind":"restaurant","restaurant_id":..,"name":..,"lat":..,"lon":..,
//    "hours":[[day,open_min,close_min],...]}
//   {"kind":"item","item_id":..,"restaurant_id":..,"name":..,"sodium_mg":..,
//    "calories":..,"allergens":[..],"diet_tags":[..],"price":..}
// Day 0 is Monday. Intervals are [open, close) in minutes of the local day.

#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sodium_scout/error.hpp"
#include "sodium_scout/geo.hpp"
#include "sodium_scout/time.hpp"

namespace sodium_scout {

struct OpenInterval {
  int day = 0;        // 0 = Monday
  int open_min = 0;   // inclusive
  int close_min = 0;  // exclusive

  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
  friend auto operator<=>(const OpenInterval&, const OpenInterval&) = default;
};

struct Restaurant {
  std::string restaurant_id;
  std::string name;
  GeoPoint location;
  std::vector<OpenInterval> hours;

  friend bool operator==(const Restaurant&, const Restaurant&) = default;
};

struct MenuItem {
  std::string item_id;
  std::string restaurant_id;
  std::string name;
  double sodium_mg = 0.0;
  double calories = 0.0;
  std::set<std::string> allergens;
  std::set<std::string> diet_tags;  // subset of {vegetarian, vegan}
  std::optional<double> price;

  bool has_tag(const std::string& tag) const { return diet_tags.count(tag) != 0; }

  friend bool operator==(const MenuItem&, const MenuItem&) = default;
};

struct CatalogOptions {
  // Zone the hours are written in; unset means "the query's own offset".
  std::optional<int> hours_utc_offset_minutes;
  Timestamp built_at;
};

class Catalog;

namespace detail {
inline std::string catalog_digest(const Catalog& c);
}

// Immutable snapshot. Only `make_catalog` and the loaders construct one.
class Catalog {
 public:
  Catalog() = default;

  const std::map<std::string, Restaurant>& restaurants() const noexcept { return restaurants_; }
  const std::map<std::string, MenuItem>& items() const noexcept { return items_; }
  const Timestamp& built_at() const noexcept { return built_at_; }
  std::optional<int> hours_utc_offset_minutes() const noexcept { return hours_offset_; }
  // 16 hex digits, FNV-1a of the canonical json-lines form.
  const std::string& version() const noexcept { return version_; }

  const Restaurant* find_restaurant(const std::string& id) const {
    auto it = restaurants_.find(id);
    return it == restaurants_.end() ? nullptr : &it->second;
  }
  const MenuItem* find_item(const std::string& id) const {
    auto it = items_.find(id);
    return it == items_.end() ? nullptr : &it->second;
  }
  const Restaurant& restaurant_of(const MenuItem& item) const { return restaurants_.at(item.restaurant_id); }

  // Items in item_id order.
  std::vector<const MenuItem*> item_refs() const {
    std::vector<const MenuItem*> out;
    out.reserve(items_.size());
    for (const auto& [id, item] : items_) out.push_back(&item);
    return out;
  }

  friend bool operator==(const Catalog& a, const Catalog& b) {
    return a.restaurants_ == b.restaurants_ && a.items_ == b.items_;
  }

 private:
  friend Catalog make_catalog(std::vector<Restaurant>, std::vector<MenuItem>, const CatalogOptions&);

  std::map<std::string, Restaurant> restaurants_;
  std::map<std::string, MenuItem> items_;
  Timestamp built_at_;
  std::optional<int> hours_offset_;
  std::string version_;
};

inline std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline void validate(const Restaurant& r) {
  if (r.restaurant_id.empty()) throw ValidationError("restaurant with empty restaurant_id");
  if (!is_valid(r.location)) throw ValidationError("restaurant '" + r.restaurant_id + "': coordinate out of range");
  for (const auto& iv : r.hours) {
    if (iv.day < 0 || iv.day > 6 || iv.open_min < 0 || iv.open_min >= iv.close_min || iv.close_min > 1440) {
      throw ValidationError("restaurant '" + r.restaurant_id + "': malformed interval [" + std::to_string(iv.day) +
                            ", " + std::to_string(iv.open_min) + ", " + std::to_string(iv.close_min) + "]");
    }
  }
  std::vector<OpenInterval> sorted = r.hours;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].day == sorted[i - 1].day && sorted[i].open_min < sorted[i - 1].close_min) {
      throw ValidationError("restaurant '" + r.restaurant_id + "': overlapping intervals on day " +
                            std::to_string(sorted[i].day));
    }
  }
}

inline void validate(const MenuItem& item) {
  if (item.item_id.empty()) throw ValidationError("item with empty item_id");
  if (!(item.sodium_mg >= 0.0) || !std::isfinite(item.sodium_mg))
    throw ValidationError("item '" + item.item_id + "': sodium_mg must be >= 0");
  if (!(item.calories >= 0.0) || !std::isfinite(item.calories))
    throw ValidationError("item '" + item.item_id + "': calories must be >= 0");
  if (item.price && (!(*item.price >= 0.0) || !std::isfinite(*item.price)))
    throw ValidationError("item '" + item.item_id + "': price must be >= 0");
  for (const auto& tag : item.diet_tags) {
    if (tag != "vegetarian" && tag != "vegan")
      throw ValidationError("item '" + item.item_id + "': unknown diet tag '" + tag + "'");
  }
}

// Validates, normalizes (sorted hours, lowercase allergens, vegan implies
// vegetarian) and checks referential integrity.
inline Catalog make_catalog(std::vector<Restaurant> restaurants, std::vector<MenuItem> items,
                            const CatalogOptions& options = {}) {
  Catalog c;
  for (auto& r : restaurants) {
    validate(r);
    std::sort(r.hours.begin(), r.hours.end());
    std::string id = r.restaurant_id;
    if (!c.restaurants_.emplace(id, std::move(r)).second)
      throw IntegrityError("duplicate restaurant_id '" + id + "'");
  }
  for (auto& item : items) {
    validate(item);
    std::set<std::string> lowered;
    for (const auto& a : item.allergens) lowered.insert(to_lower(a));
    item.allergens = std::move(lowered);
    if (item.has_tag("vegan")) item.diet_tags.insert("vegetarian");
    if (!c.restaurants_.count(item.restaurant_id))
      throw IntegrityError("item '" + item.item_id + "' references unknown restaurant_id '" + item.restaurant_id + "'");
    std::string id = item.item_id;
    if (!c.items_.emplace(id, std::move(item)).second) throw IntegrityError("duplicate item_id '" + id + "'");
  }
  c.built_at_ = options.built_at;
  c.hours_offset_ = options.hours_utc_offset_minutes;
  c.version_ = detail::catalog_digest(c);
  return c;
}

// ---------------------------------------------------------------------------
// json-lines codec

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json restaurant_record(const Restaurant& r) {
  ordered_json j;
  j["kind"] = "restaurant";
  j["restaurant_id"] = r.restaurant_id;
  j["name"] = r.name;
  j["lat"] = r.location.lat;
  j["lon"] = r.location.lon;
  ordered_json hours = ordered_json::array();
  for (const auto& iv : r.hours) hours.push_back({iv.day, iv.open_min, iv.close_min});
  j["hours"] = std::move(hours);
  return j;
}

inline ordered_json item_record(const MenuItem& item) {
  ordered_json j;
  j["kind"] = "item";
  j["item_id"] = item.item_id;
  j["restaurant_id"] = item.restaurant_id;
  j["name"] = item.name;
  j["sodium_mg"] = item.sodium_mg;
  j["calories"] = item.calories;
  j["allergens"] = item.allergens;
  j["diet_tags"] = item.diet_tags;
  if (item.price) j["price"] = *item.price;
  return j;
}

inline void write_catalog_lines(const Catalog& c, std::ostream& out) {
  for (const auto& [id, r] : c.restaurants()) out << restaurant_record(r).dump() << '\n';
  for (const auto& [id, item] : c.items()) out << item_record(item).dump() << '\n';
}

inline std::string catalog_digest(const Catalog& c) {
  std::ostringstream os;
  write_catalog_lines(c, os);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

template <typename T>
T required(const nlohmann::json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(line, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(line, std::string("field '") + key + "' has the wrong type");
  }
}

inline std::set<std::string> string_set(const nlohmann::json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  if (!it->is_array()) throw ParseError(line, std::string("field '") + key + "' must be a list");
  std::set<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw ParseError(line, std::string("field '") + key + "' must hold strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

inline void warn_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, std::size_t line,
                         std::vector<std::string>& warnings) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool found = false;
    for (const char* k : known) found = found || it.key() == k;
    if (!found) warnings.push_back("line " + std::to_string(line) + ": unknown field '" + it.key() + "' ignored");
  }
}

}  // namespace detail

struct LoadResult {
  Catalog catalog;
  std::vector<std::string> warnings;
};

/// Reads a json-lines catalog. Blank lines are skipped. Throws ParseError for
/// malformed records, ValidationError for invariant violations and
/// IntegrityError for duplicate ids or dangling restaurant references.
inline LoadResult load_catalog(std::istream& in, const CatalogOptions& options = {}) {
  LoadResult result;
  std::vector<Restaurant> restaurants;
  std::vector<MenuItem> items;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(line, "record must be a JSON object");
    const auto kind = detail::required<std::string>(j, "kind", line);
    try {
      if (kind == "restaurant") {
        detail::warn_unknown(j, {"kind", "restaurant_id", "name", "lat", "lon", "hours"}, line, result.warnings);
        Restaurant r;
        r.restaurant_id = detail::required<std::string>(j, "restaurant_id", line);
        r.name = detail::required<std::string>(j, "name", line);
        r.location = {detail::required<double>(j, "lat", line), detail::required<double>(j, "lon", line)};
        if (auto it = j.find("hours"); it != j.end()) {
          if (!it->is_array()) throw ParseError(line, "field 'hours' must be a list");
          for (const auto& iv : *it) {
            if (!iv.is_array() || iv.size() != 3 || !iv[0].is_number_integer() || !iv[1].is_number_integer() ||
                !iv[2].is_number_integer())
              throw ParseError(line, "hours entries must be [day, open_min, close_min] integers");
            r.hours.push_back({iv[0].get<int>(), iv[1].get<int>(), iv[2].get<int>()});
          }
        }
        validate(r);
        restaurants.push_back(std::move(r));
      } else if (kind == "item") {
        detail::warn_unknown(j,
                             {"kind", "item_id", "restaurant_id", "name", "sodium_mg", "calories", "allergens",
                              "diet_tags", "price"},
                             line, result.warnings);
        MenuItem item;
        item.item_id = detail::required<std::string>(j, "item_id", line);
        item.restaurant_id = detail::required<std::string>(j, "restaurant_id", line);
        item.name = detail::required<std::string>(j, "name", line);
        item.sodium_mg = detail::required<double>(j, "sodium_mg", line);
        item.calories = detail::required<double>(j, "calories", line);
        item.allergens = detail::string_set(j, "allergens", line);
        item.diet_tags = detail::string_set(j, "diet_tags", line);
        if (auto it = j.find("price"); it != j.end() && !it->is_null()) {
          if (!it->is_number()) throw ParseError(line, "field 'price' must be a number");
          item.price = it->get<double>();
        }
        validate(item);
        items.push_back(std::move(item));
      } else {
        throw ParseError(line, "unknown record kind '" + kind + "'");
      }
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  result.catalog = make_catalog(std::move(restaurants), std::move(items), options);
  return result;
}

/// Canonical form: restaurants in restaurant_id order, then items in item_id
/// order, one compact JSON object per line.
inline void save_catalog(const Catalog& c, std::ostream& out) {
  detail::write_catalog_lines(c, out);
  out.flush();
  if (!out) throw Error("io_error", "failed to write catalog");
}

// ---------------------------------------------------------------------------
// Synthetic generator

// Portable RNG: raw mt19937_64 output with fixed transforms, so a seed yields
// the same catalog on every standard library.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * n)); }
  bool bernoulli(double p) { return uniform() < p; }
  // Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

inline const std::vector<std::string>& synthetic_allergen_vocabulary() {
  static const std::vector<std::string> kTags = {"dairy", "egg", "fish", "peanut", "sesame", "shellfish", "soy",
                                                 "tree_nut", "wheat"};
  return kTags;
}

/// Seeded long-tail catalog. Sodium is log-normal (median 900 mg), clamped to
/// [40, 6500] mg and rounded to whole milligrams.
inline Catalog generate_synthetic_catalog(std::uint64_t seed, std::size_t n_restaurants,
                                          std::size_t items_per_restaurant, const BoundingBox& region,
                                          const CatalogOptions& options = {}) {
  if (n_restaurants == 0 || items_per_restaurant == 0)
    throw ValidationError("restaurant and item counts must be > 0");
  if (!is_valid(region.a) || !is_valid(region.b)) throw ValidationError("bounding box out of range");

  static const char* const kCuisines[] = {"Taqueria", "Noodle Bar", "Deli", "Grill", "Bistro", "Pho House",
                                          "Pizzeria", "Sushi", "Diner", "Cafe"};
  static const char* const kDishes[] = {"Burrito", "Ramen", "Turkey Club", "Caesar Salad", "Pad Thai",
                                        "Margherita Pizza", "Poke Bowl", "Veggie Wrap", "Cheeseburger",
                                        "Lentil Soup", "Fried Rice", "Grain Bowl", "Tacos", "Pho", "Omelette",
                                        "Falafel Plate"};
  // Weekly patterns: (open, close) pairs applied to each open day.
  static const std::vector<std::vector<std::pair<int, int>>> kPatterns = {
      {{660, 1320}}, {{420, 1260}}, {{690, 870}, {1020, 1320}}, {{600, 1440}}, {{360, 900}}};

  DeterministicRng rng(seed);
  std::vector<Restaurant> restaurants;
  std::vector<MenuItem> items;
  const auto& allergens = synthetic_allergen_vocabulary();

  auto pad = [](std::size_t v, int width) {
    std::string s = std::to_string(v);
    return std::string(s.size() < static_cast<std::size_t>(width) ? width - s.size() : 0, '0') + s;
  };

  for (std::size_t r = 0; r < n_restaurants; ++r) {
    Restaurant rest;
    rest.restaurant_id = "r" + pad(r + 1, 4);
    rest.name = std::string(kCuisines[rng.index(std::size(kCuisines))]) + " #" + std::to_string(r + 1);
    rest.location = {rng.uniform(region.min_lat(), region.max_lat()), rng.uniform(region.min_lon(), region.max_lon())};
    const auto& pattern = kPatterns[rng.index(kPatterns.size())];
    const int closed_day = rng.bernoulli(0.3) ? static_cast<int>(rng.index(7)) : -1;
    for (int day = 0; day < 7; ++day) {
      if (day == closed_day) continue;
      for (const auto& [open, close] : pattern) rest.hours.push_back({day, open, close});
    }
    restaurants.push_back(rest);

    for (std::size_t i = 0; i < items_per_restaurant; ++i) {
      MenuItem item;
      item.item_id = rest.restaurant_id + "-i" + pad(i + 1, 4);
      item.restaurant_id = rest.restaurant_id;
      item.name = kDishes[rng.index(std::size(kDishes))];
      item.sodium_mg = std::round(std::clamp(900.0 * std::exp(0.75 * rng.normal()), 40.0, 6500.0));
      item.calories = std::round(std::clamp(150.0 + 0.35 * item.sodium_mg * std::exp(0.3 * rng.normal()), 50.0, 2500.0));
      for (const auto& a : allergens) {
        if (rng.bernoulli(0.12)) item.allergens.insert(a);
      }
      const double diet = rng.uniform();
      if (diet < 0.10) {
        item.diet_tags = {"vegan", "vegetarian"};
      } else if (diet < 0.30) {
        item.diet_tags = {"vegetarian"};
      }
      if (rng.bernoulli(0.9)) item.price = std::round(rng.uniform(4.0, 24.0) * 100.0) / 100.0;
      items.push_back(std::move(item));
    }
  }
  return make_catalog(std::move(restaurants), std::move(items), options);
}

}  // namespace sodium_scout
