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
#include <numeric>

#include "sodium_scout/ranking.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

namespace ss = sodium_scout;
using ss::testing::Gen;

namespace {

ss::MealBudget budget(double target) { return {target, target, 1.0}; }

std::vector<ss::MenuItem> items_with_sodium(const std::vector<double>& sodium) {
  std::vector<ss::MenuItem> out;
  for (std::size_t i = 0; i < sodium.size(); ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "i%03zu", i);
    out.push_back({id, "r", "dish", sodium[i], 100, {}, {}, {}});
  }
  return out;
}

ss::ItemRefs refs(const std::vector<ss::MenuItem>& items) {
  ss::ItemRefs out;
  for (const auto& i : items) out.push_back(&i);
  return out;
}

}  // namespace

TEST(MealBudget, Fractions) {
  ss::SodiumNeed need;
  need.total_na = 3000;
  EXPECT_EQ(ss::meal_budget(need, 1.0).target_mg, 3000.0);
  need.total_na = 3320.4;
  const auto b = ss::meal_budget(need, 1.0 / 3.0);
  EXPECT_NEAR(b.target_mg, 1106.8, 1e-9);
  EXPECT_EQ(b.source_total_mg, 3320.4);
  EXPECT_THROW(ss::meal_budget(need, 0.0), ss::InvalidFraction);
  EXPECT_THROW(ss::meal_budget(need, 1.0001), ss::InvalidFraction);
  EXPECT_THROW(ss::meal_budget(need, -0.5), ss::InvalidFraction);
}

TEST(HealthScore, PointValues) {
  EXPECT_EQ(ss::health_score(1106.8, budget(1106.8)), 1.0);
  EXPECT_EQ(ss::health_score(2 * 1106.8, budget(1106.8)), 0.0);
  EXPECT_EQ(ss::health_score(5000, budget(1106.8)), 0.0);
  EXPECT_EQ(ss::health_score(0, budget(1106.8)), 0.0);
  EXPECT_NEAR(ss::health_score(900, budget(1106.8)), 0.8131, 1e-4);
  EXPECT_THROW(ss::health_score(900, budget(0)), ss::ZeroTarget);
}

TEST(HealthScore, AsymmetricPenalty) {
  const auto p = ss::PenaltyModel::asymmetric(2.0);
  EXPECT_NEAR(ss::health_score(1100, budget(1000), p), 0.8, 1e-12);
  EXPECT_NEAR(ss::health_score(900, budget(1000), p), 0.9, 1e-12);
  EXPECT_EQ(ss::health_score(1000, budget(1000), p), 1.0);
  EXPECT_THROW(ss::PenaltyModel::asymmetric(0.0), ss::ValidationError);
}

TEST(HealthScoreProperties, UniqueArgmaxAndStrictDecrease) {
  Gen g(51);
  for (int trial = 0; trial < 1000; ++trial) {
    const double t = g.real(50, 5000);
    const double d1 = g.real(0, t * 0.99);
    const double d2 = g.real(0, t * 0.99);
    const double s_plus = ss::health_score(t + d1, budget(t));
    const double s_minus = ss::health_score(t - d1, budget(t));
    EXPECT_LE(s_plus, 1.0);
    EXPECT_NEAR(s_plus, s_minus, 1e-12);
    if (d1 > 0) {
      EXPECT_LT(s_plus, 1.0);
    }
    if (std::fabs(d1 - d2) > 1e-6 * t) {
      EXPECT_EQ(d1 < d2, ss::health_score(t + d1, budget(t)) > ss::health_score(t + d2, budget(t)));
    }
  }
}

TEST(HealthScoreProperties, RankingInvariantUnderCommonScaling) {
  Gen g(52);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> sodium(30);
    for (auto& s : sodium) s = std::round(g.real(0, 4000));
    const double t = g.real(200, 2000);
    // Powers of two scale exactly, so the induced order must match exactly.
    const double c = g.pick(std::vector<double>{0.25, 0.5, 2.0, 4.0, 8.0});
    auto scaled = sodium;
    for (auto& s : scaled) s *= c;
    const auto a = items_with_sodium(sodium);
    const auto b = items_with_sodium(scaled);
    std::vector<double> sa, sb, zeros(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      sa.push_back(ss::health_score(a[i].sodium_mg, budget(t)));
      sb.push_back(ss::health_score(b[i].sodium_mg, budget(c * t)));
    }
    const auto ra = ss::top_k(sa, refs(a), a.size(), zeros);
    const auto rb = ss::top_k(sb, refs(b), b.size(), zeros);
    ASSERT_EQ(ra.size(), rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
      EXPECT_EQ(ra[i].item_id, rb[i].item_id);
      EXPECT_EQ(ra[i].score, rb[i].score);
    }
  }
}

TEST(UtilityMatrix, BuildSmallCases) {
  const std::vector<ss::UserProfile> none;
  const std::vector<ss::ScenarioInput> no_scenarios;
  const auto items = items_with_sodium({100, 200, 300});
  const auto empty = ss::build_utility_matrix(none, no_scenarios, refs(items), 1.0 / 3.0);
  EXPECT_EQ(empty.rows(), 0u);
  EXPECT_EQ(empty.cols(), 3u);

  const std::vector<ss::UserProfile> one = {{"u", 170, 150, ss::Sex::male, 30, "N", {}, ss::Diet::none}};
  const std::vector<ss::ScenarioInput> sc = {
      {"s", 1000, 3, 0, 32, ss::parse_timestamp("2026-10-14T12:00:00Z"), {34, -118}}};
  const double target = ss::sodium_need(one[0], sc[0]).total_na / 3.0;
  const auto exact = items_with_sodium({target});
  const auto m = ss::build_utility_matrix(one, sc, refs(exact), 1.0 / 3.0);
  ASSERT_EQ(m.rows(), 1u);
  ASSERT_EQ(m.cols(), 1u);
  EXPECT_EQ(m.at(0, 0), 1.0);
}

TEST(UtilityMatrix, MatchesBruteForceRecomputation) {
  Gen g(53);
  std::vector<ss::UserProfile> profiles;
  std::vector<ss::ScenarioInput> scenarios;
  for (int u = 0; u < 3; ++u) {
    profiles.push_back(ss::testing::random_profile(g, "u" + std::to_string(u)));
    scenarios.push_back(ss::testing::random_scenario(g, "s" + std::to_string(u)));
  }
  std::vector<double> sodium;
  for (int i = 0; i < 20; ++i) sodium.push_back(std::round(g.real(50, 4000)));
  const auto items = items_with_sodium(sodium);
  const auto m = ss::build_utility_matrix(profiles, scenarios, refs(items), 1.0 / 3.0);
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 20u);
  for (std::size_t u = 0; u < 3; ++u) {
    const double target = ss::oracle::total_sodium(profiles[u], scenarios[u]) / 3.0;
    for (std::size_t i = 0; i < 20; ++i) {
      const double expected = std::max(0.0, 1.0 - std::fabs(sodium[i] - target) / target);
      EXPECT_NEAR(m.at(u, i), expected, 1e-9);
    }
  }
}

TEST(UtilityMatrix, PropagatesAgeErrorWithUserId) {
  std::vector<ss::UserProfile> profiles = {{"ok", 170, 150, ss::Sex::male, 30, "N", {}, ss::Diet::none},
                                           {"kid", 120, 50, ss::Sex::female, 6, "N", {}, ss::Diet::none}};
  const ss::ScenarioInput s{"s", 0, 0, 0, 60, ss::parse_timestamp("2026-10-14T12:00:00Z"), {34, -118}};
  std::vector<ss::ScenarioInput> scenarios = {s, s};
  const auto items = items_with_sodium({500});
  try {
    ss::build_utility_matrix(profiles, scenarios, refs(items), 1.0 / 3.0);
    FAIL();
  } catch (const ss::UnsupportedAge& e) {
    EXPECT_EQ(e.user_id(), "kid");
  }
  scenarios.pop_back();
  EXPECT_THROW(ss::build_utility_matrix(profiles, scenarios, refs(items), 1.0 / 3.0), ss::AxisMismatch);
}

TEST(CombineMatrices, Examples) {
  const ss::UtilityMatrix m({"u1", "u2"}, {"a", "b"}, {0.1, 0.5, 0.9, 1.0});
  const std::vector<ss::UtilityMatrix> single = {m};
  EXPECT_EQ(ss::combine_matrices(single, std::vector<double>{5}), m);
  const std::vector<ss::UtilityMatrix> twice = {m, m};
  EXPECT_EQ(ss::combine_matrices(twice, std::vector<double>{1, 1}), m);

  const std::vector<ss::UtilityMatrix> pair = {ss::UtilityMatrix({"u"}, {"i"}, {0.2}),
                                               ss::UtilityMatrix({"u"}, {"i"}, {0.8})};
  EXPECT_NEAR(ss::combine_matrices(pair, std::vector<double>{3, 1}).at(0, 0), 0.35, 1e-12);
}

TEST(CombineMatrices, Errors) {
  const std::vector<ss::UtilityMatrix> mismatched = {ss::UtilityMatrix({"u"}, {"i"}, {0.2}),
                                                     ss::UtilityMatrix({"u"}, {"j"}, {0.8})};
  EXPECT_THROW(ss::combine_matrices(mismatched, std::vector<double>{1, 1}), ss::AxisMismatch);
  const std::vector<ss::UtilityMatrix> ok = {ss::UtilityMatrix({"u"}, {"i"}, {0.2}),
                                             ss::UtilityMatrix({"u"}, {"i"}, {0.8})};
  EXPECT_THROW(ss::combine_matrices(ok, std::vector<double>{0, 0}), ss::DegenerateWeights);
  EXPECT_THROW(ss::combine_matrices(ok, std::vector<double>{1, -1}), ss::DegenerateWeights);
  EXPECT_THROW(ss::combine_matrices(ok, std::vector<double>{1}), ss::AxisMismatch);
  EXPECT_THROW(ss::UtilityMatrix({"u"}, {"i"}, {1.5}), ss::ValidationError);
}

TEST(CombineMatricesProperties, FirstWeightOnlyAndBounds) {
  Gen g(54);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 4));
    std::vector<ss::UtilityMatrix> ms;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> s(6);
      for (auto& v : s) v = g.real(0, 1);
      ms.emplace_back(std::vector<std::string>{"u1", "u2"}, std::vector<std::string>{"a", "b", "c"}, s);
    }
    std::vector<double> first_only(n, 0.0);
    first_only[0] = g.real(0.1, 10);
    EXPECT_EQ(ss::combine_matrices(ms, first_only), ms[0]);

    std::vector<double> w(n);
    for (auto& v : w) v = g.real(0, 5);
    w[0] += 0.01;
    const auto c = ss::combine_matrices(ms, w);
    for (std::size_t u = 0; u < 2; ++u) {
      for (std::size_t i = 0; i < 3; ++i) {
        double lo = 1, hi = 0;
        for (const auto& m : ms) {
          lo = std::min(lo, m.at(u, i));
          hi = std::max(hi, m.at(u, i));
        }
        EXPECT_GE(c.at(u, i), lo);
        EXPECT_LE(c.at(u, i), hi);
      }
    }
  }
}

TEST(TopK, Examples) {
  const auto items = items_with_sodium({100, 200});
  const std::vector<double> scores = {0.9, 0.9};
  const std::vector<double> dist = {5, 2};
  EXPECT_TRUE(ss::top_k(scores, refs(items), 0, dist).empty());
  const auto r = ss::top_k(scores, refs(items), 5, dist);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].item_id, "i001");
  EXPECT_EQ(r[0].distance_km, 2.0);
  // Equal score and distance: item_id decides.
  const auto same = ss::top_k(scores, refs(items), 2, std::vector<double>{3, 3});
  EXPECT_EQ(same[0].item_id, "i000");
  EXPECT_THROW(ss::top_k(scores, refs(items), 1, std::vector<double>{1}), ss::AxisMismatch);
}

TEST(TopKProperties, MatchesFullSortAndIsPrefix) {
  Gen g(55);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> sodium(50);
    for (auto& s : sodium) s = std::round(g.real(0, 3000));
    const auto items = items_with_sodium(sodium);
    std::vector<double> scores(50), dist(50);
    for (std::size_t i = 0; i < 50; ++i) {
      // Coarse values force ties on both keys.
      scores[i] = std::round(g.real(0, 1) * 10) / 10;
      dist[i] = std::round(g.real(0, 30) / 5) * 5;
    }
    std::vector<std::size_t> order(50);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      if (dist[a] != dist[b]) return dist[a] < dist[b];
      return items[a].item_id < items[b].item_id;
    });
    const auto full = ss::top_k(scores, refs(items), 50, dist);
    for (std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{10}, std::size_t{49}, std::size_t{50},
                          std::size_t{80}}) {
      const auto top = ss::top_k(scores, refs(items), k, dist);
      ASSERT_EQ(top.size(), std::min<std::size_t>(k, 50));
      for (std::size_t i = 0; i < top.size(); ++i) {
        EXPECT_EQ(top[i].item_id, items[order[i]].item_id);
        EXPECT_EQ(top[i], full[i]);
      }
    }
    for (std::size_t i = 1; i < full.size(); ++i) EXPECT_GE(full[i - 1].score, full[i].score);
  }
}

TEST(RankingProperties, MoreStepsHelpItemsAboveOldTarget) {
  const ss::UserProfile p{"u", 170, 160, ss::Sex::male, 35, "N", {}, ss::Diet::none};
  ss::ScenarioInput s{"s", 2000, 5, 0, 60, ss::parse_timestamp("2026-10-14T12:00:00Z"), {34, -118}};
  auto more = s;
  more.steps = 4000;
  const double old_target = ss::sodium_need(p, s).total_na / 3.0;
  const double new_target = ss::sodium_need(p, more).total_na / 3.0;
  const auto items = items_with_sodium({old_target * 1.2, old_target * 1.4, old_target * 1.8});
  // The gain is only guaranteed while the item stays above the raised target.
  for (const auto& i : items) ASSERT_GT(i.sodium_mg, new_target);
  const std::vector<ss::UserProfile> ps = {p, p};
  const std::vector<ss::ScenarioInput> scs = {s, more};
  const auto m = ss::build_utility_matrix(ps, scs, refs(items), 1.0 / 3.0);
  for (std::size_t i = 0; i < items.size(); ++i) EXPECT_GT(m.at(1, i), m.at(0, i)) << i;
}
