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

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sodium_scout/error.hpp"

namespace sodium_scout {

inline constexpr double kEarthRadiusKm = 6371.0;

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

inline bool is_valid(const GeoPoint& p) noexcept {
  return p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

inline void validate(const GeoPoint& p) {
  if (!is_valid(p)) {
    throw ValidationError("coordinate out of range: (" + std::to_string(p.lat) + ", " +
                          std::to_string(p.lon) + ")");
  }
}

// Axis-aligned lat/lon box. Corners may be given in either order.
struct BoundingBox {
  GeoPoint a;
  GeoPoint b;

  double min_lat() const noexcept { return std::min(a.lat, b.lat); }
  double max_lat() const noexcept { return std::max(a.lat, b.lat); }
  double min_lon() const noexcept { return std::min(a.lon, b.lon); }
  double max_lon() const noexcept { return std::max(a.lon, b.lon); }
};

inline double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

// Great-circle distance on a sphere of radius 6371 km.
inline double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double dlat = deg_to_rad(b.lat - a.lat);
  const double dlon = deg_to_rad(b.lon - a.lon);
  const double s_lat = std::sin(dlat / 2.0);
  const double s_lon = std::sin(dlon / 2.0);
  double h = s_lat * s_lat + std::cos(deg_to_rad(a.lat)) * std::cos(deg_to_rad(b.lat)) * s_lon * s_lon;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

}  // namespace sodium_scout
