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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "sodium_scout/catalog.hpp"
#include "support/generators.hpp"

namespace ss = sodium_scout;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(SODIUM_SCOUT_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ss::LoadResult load_text(const std::string& text) {
  std::istringstream in(text);
  return ss::load_catalog(in);
}

std::string save_text(const ss::Catalog& c) {
  std::ostringstream out;
  ss::save_catalog(c, out);
  return out.str();
}

const char* kRestaurant =
    R"({"kind":"restaurant","restaurant_id":"r1","name":"A","lat":34.0,"lon":-118.0,"hours":[[0,660,1320]]})";

}  // namespace

TEST(LoadCatalog, EmptyStream) {
  const auto r = load_text("");
  EXPECT_TRUE(r.catalog.restaurants().empty());
  EXPECT_TRUE(r.catalog.items().empty());
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(save_text(r.catalog), "");
}

TEST(LoadCatalog, SmallFixtureRoundTripsByteIdentically) {
  const std::string text = read_fixture("catalog_small.jsonl");
  ASSERT_FALSE(text.empty());
  const auto r = load_text(text);
  EXPECT_EQ(r.catalog.restaurants().size(), 2u);
  EXPECT_EQ(r.catalog.items().size(), 5u);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(save_text(r.catalog), text);
  EXPECT_EQ(load_text(save_text(r.catalog)).catalog, r.catalog);
}

TEST(LoadCatalog, OutputSortedRegardlessOfInputOrder) {
  const std::string text = read_fixture("catalog_small.jsonl");
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string permuted;
    for (const auto& l : lines) permuted += l + "\n";
    EXPECT_EQ(save_text(load_text(permuted).catalog), text);
  }
}

TEST(LoadCatalog, NegativeSodiumNamesItem) {
  const std::string text = std::string(kRestaurant) + "\n" +
                           R"({"kind":"item","item_id":"bad-1","restaurant_id":"r1","name":"x","sodium_mg":-5,"calories":10})";
  try {
    load_text(text);
    FAIL() << "expected ValidationError";
  } catch (const ss::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("bad-1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(LoadCatalog, ParseErrorsCarryLineNumbers) {
  try {
    load_text(std::string(kRestaurant) + "\n\n{not json}\n");
    FAIL();
  } catch (const ss::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(load_text(R"({"kind":"menu"})"), ss::ParseError);
  EXPECT_THROW(load_text(R"([1,2])"), ss::ParseError);
  EXPECT_THROW(load_text(R"({"kind":"restaurant","restaurant_id":"r","name":"n","lat":"x","lon":0})"), ss::ParseError);
  EXPECT_THROW(load_text(R"({"kind":"restaurant","restaurant_id":"r","name":"n","lat":0,"lon":0,"hours":[[0,1]]})"),
               ss::ParseError);
}

TEST(LoadCatalog, IntegrityErrors) {
  EXPECT_THROW(load_text(R"({"kind":"item","item_id":"i","restaurant_id":"nowhere","name":"x","sodium_mg":1,"calories":1})"),
               ss::IntegrityError);
  EXPECT_THROW(load_text(std::string(kRestaurant) + "\n" + kRestaurant), ss::IntegrityError);
}

TEST(LoadCatalog, ForwardReferencesResolve) {
  const std::string text =
      std::string(R"({"kind":"item","item_id":"i","restaurant_id":"r1","name":"x","sodium_mg":1,"calories":1})") + "\n" +
      kRestaurant;
  EXPECT_EQ(load_text(text).catalog.items().size(), 1u);
}

TEST(LoadCatalog, HoursValidation) {
  auto with_hours = [](const std::string& hours) {
    return R"({"kind":"restaurant","restaurant_id":"r","name":"n","lat":0,"lon":0,"hours":)" + hours + "}";
  };
  EXPECT_THROW(load_text(with_hours("[[0,600,600]]")), ss::ValidationError);
  EXPECT_THROW(load_text(with_hours("[[7,0,10]]")), ss::ValidationError);
  EXPECT_THROW(load_text(with_hours("[[0,0,1441]]")), ss::ValidationError);
  EXPECT_THROW(load_text(with_hours("[[0,600,900],[0,800,1000]]")), ss::ValidationError);
  EXPECT_NO_THROW(load_text(with_hours("[[0,600,900],[0,900,1000],[1,800,1000]]")));
}

TEST(LoadCatalog, VeganImpliesVegetarianAndTagsNormalize) {
  const std::string text = std::string(kRestaurant) + "\n" +
                           R"({"kind":"item","item_id":"i","restaurant_id":"r1","name":"x","sodium_mg":1,"calories":1,"allergens":["Peanut"],"diet_tags":["vegan"]})";
  const auto c = load_text(text).catalog;
  const auto* item = c.find_item("i");
  ASSERT_NE(item, nullptr);
  EXPECT_TRUE(item->has_tag("vegetarian"));
  EXPECT_EQ(item->allergens, std::set<std::string>{"peanut"});
  EXPECT_THROW(load_text(std::string(kRestaurant) + "\n" +
                         R"({"kind":"item","item_id":"i","restaurant_id":"r1","name":"x","sodium_mg":1,"calories":1,"diet_tags":["keto"]})"),
               ss::ValidationError);
}

TEST(LoadCatalog, UnknownFieldsWarn) {
  const auto r = load_text(std::string(R"({"kind":"restaurant","restaurant_id":"r","name":"n","lat":0,"lon":0,"stars":4})"));
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("stars"), std::string::npos);
}

TEST(SaveCatalog, SinkFailure) {
  const auto c = load_text(read_fixture("catalog_small.jsonl")).catalog;
  std::ostringstream sink;
  sink.setstate(std::ios::badbit);
  EXPECT_THROW(ss::save_catalog(c, sink), ss::Error);
}

TEST(CatalogProperties, RandomCatalogsRoundTrip) {
  ss::testing::Gen g(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = ss::testing::random_catalog(g, static_cast<std::size_t>(g.integer(0, 6)), 8);
    const std::string text = save_text(c);
    const auto back = load_text(text).catalog;
    EXPECT_EQ(back, c);
    EXPECT_EQ(back.version(), c.version());
    EXPECT_EQ(save_text(back), text);
  }
}

TEST(Synthetic, Deterministic) {
  const ss::BoundingBox box{{33.4, -118.6}, {34.3, -117.6}};
  const auto a = ss::generate_synthetic_catalog(7, 1, 1, box);
  const auto b = ss::generate_synthetic_catalog(7, 1, 1, box);
  EXPECT_EQ(save_text(a), save_text(b));
  EXPECT_NE(save_text(a), save_text(ss::generate_synthetic_catalog(8, 1, 1, box)));
}

TEST(Synthetic, CardinalitySpreadAndPlausibility) {
  const ss::BoundingBox box{{33.4, -118.6}, {34.3, -117.6}};
  const auto c = ss::generate_synthetic_catalog(7, 10, 20, box);
  EXPECT_EQ(c.restaurants().size(), 10u);
  EXPECT_EQ(c.items().size(), 200u);
  double lo = 1e9, hi = 0;
  for (const auto& [id, item] : c.items()) {
    lo = std::min(lo, item.sodium_mg);
    hi = std::max(hi, item.sodium_mg);
    if (item.has_tag("vegan")) {
      EXPECT_TRUE(item.has_tag("vegetarian"));
    }
  }
  EXPECT_LT(lo, 500.0);
  EXPECT_GT(hi, 2500.0);
  for (const auto& [id, r] : c.restaurants()) {
    EXPECT_GE(r.hours.size(), 6u) << id;
    EXPECT_GE(r.location.lat, box.min_lat());
    EXPECT_LE(r.location.lat, box.max_lat());
    EXPECT_GE(r.location.lon, box.min_lon());
    EXPECT_LE(r.location.lon, box.max_lon());
  }
}

TEST(Synthetic, MatchesCheckedInSeed7Catalog) {
  const auto c = ss::generate_synthetic_catalog(7, 10, 20, {{33.4, -118.6}, {34.3, -117.6}});
  EXPECT_EQ(save_text(c), read_fixture("catalog_socal_seed7.jsonl"));
}

TEST(Synthetic, RejectsZeroCounts) {
  EXPECT_THROW(ss::generate_synthetic_catalog(1, 0, 1, {{0, 0}, {1, 1}}), ss::ValidationError);
  EXPECT_THROW(ss::generate_synthetic_catalog(1, 1, 0, {{0, 0}, {1, 1}}), ss::ValidationError);
}
