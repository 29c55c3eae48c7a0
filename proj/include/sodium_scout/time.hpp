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

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "sodium_scout/error.hpp"

namespace sodium_scout {

// A UTC instant plus the offset it was expressed in.
struct Timestamp {
  std::int64_t unix_seconds = 0;
  int utc_offset_minutes = 0;

  friend bool operator==(const Timestamp&, const Timestamp&) = default;
};

// Day-of-week 0 = Monday ... 6 = Sunday, minute-of-day in [0, 1440).
struct WeekMinute {
  int day = 0;
  int minute = 0;
};

namespace detail {

inline bool parse_fixed_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  const char* first = s.data() + pos;
  const char* last = first + len;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

// Parses `YYYY-MM-DDTHH:MM[:SS](Z|+HH:MM|-HH:MM)`.
inline Timestamp parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  auto fail = [&]() -> Timestamp {
    throw ValidationError("invalid timestamp '" + std::string(s) + "'");
  };
  int y = 0, mo = 0, d = 0, hh = 0, mm = 0, ss = 0;
  if (s.size() < 17 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':')
    return fail();
  if (!detail::parse_fixed_int(s, 0, 4, y) || !detail::parse_fixed_int(s, 5, 2, mo) ||
      !detail::parse_fixed_int(s, 8, 2, d) || !detail::parse_fixed_int(s, 11, 2, hh) ||
      !detail::parse_fixed_int(s, 14, 2, mm))
    return fail();
  std::size_t pos = 16;
  if (pos < s.size() && s[pos] == ':') {
    if (!detail::parse_fixed_int(s, pos + 1, 2, ss)) return fail();
    pos += 3;
  }
  int offset = 0;
  if (pos >= s.size()) return fail();
  if (s[pos] == 'Z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    int oh = 0, om = 0;
    const int sign = s[pos] == '-' ? -1 : 1;
    if (!detail::parse_fixed_int(s, pos + 1, 2, oh)) return fail();
    std::size_t mpos = pos + 3;
    if (mpos < s.size() && s[mpos] == ':') ++mpos;
    if (!detail::parse_fixed_int(s, mpos, 2, om)) return fail();
    if (oh > 18 || om > 59) return fail();
    offset = sign * (oh * 60 + om);
    pos = mpos + 2;
  } else {
    return fail();
  }
  if (pos != s.size()) return fail();

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) return fail();
  const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  const std::int64_t local = days * 86400 + hh * 3600 + mm * 60 + ss;
  return Timestamp{local - static_cast<std::int64_t>(offset) * 60, offset};
}

inline std::string format_timestamp(const Timestamp& t) {
  using namespace std::chrono;
  const std::int64_t local = t.unix_seconds + static_cast<std::int64_t>(t.utc_offset_minutes) * 60;
  const std::int64_t days = detail::floor_div(local, 86400);
  const std::int64_t secs = local - days * 86400;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[40];
  const int off = t.utc_offset_minutes < 0 ? -t.utc_offset_minutes : t.utc_offset_minutes;
  int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                        static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                        static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60),
                        static_cast<int>(secs % 60));
  if (t.utc_offset_minutes == 0) {
    std::snprintf(buf + n, sizeof buf - n, "Z");
  } else {
    std::snprintf(buf + n, sizeof buf - n, "%c%02d:%02d", t.utc_offset_minutes < 0 ? '-' : '+', off / 60,
                  off % 60);
  }
  return buf;
}

// Wall-clock (weekday, minute) of `t` in the zone `utc_offset_minutes`, or in
// t's own offset when none is given.
inline WeekMinute local_week_minute(const Timestamp& t, std::optional<int> utc_offset_minutes = std::nullopt) {
  using namespace std::chrono;
  const int offset = utc_offset_minutes.value_or(t.utc_offset_minutes);
  const std::int64_t local = t.unix_seconds + static_cast<std::int64_t>(offset) * 60;
  const std::int64_t days = detail::floor_div(local, 86400);
  const std::int64_t secs = local - days * 86400;
  const weekday wd{sys_days{std::chrono::days{days}}};
  return WeekMinute{static_cast<int>(wd.iso_encoding()) - 1, static_cast<int>(secs / 60)};
}

}  // namespace sodium_scout
