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

// Situation model and utility matrix: per-meal sodium budget, item health
// score, users x items matrices, weighted combination and top-k extraction.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sodium_scout/catalog.hpp"
#include "sodium_scout/error.hpp"
#include "sodium_scout/physio.hpp"

namespace sodium_scout {

inline constexpr double kDefaultMealFraction = 1.0 / 3.0;

struct MealBudget {
  double target_mg = 0.0;
  double source_total_mg = 0.0;
  double meal_fraction = kDefaultMealFraction;

  friend bool operator==(const MealBudget&, const MealBudget&) = default;
};

inline MealBudget meal_budget(const SodiumNeed& need, double meal_fraction) {
  if (!(meal_fraction > 0.0 && meal_fraction <= 1.0)) throw InvalidFraction(meal_fraction);
  return MealBudget{need.total_na * meal_fraction, need.total_na, meal_fraction};
}

// linear:             1 - |d| / target
// linear_asymmetric:  1 - alpha * d / target above target, linear below
struct PenaltyModel {
  enum class Kind { linear, linear_asymmetric };
  Kind kind = Kind::linear;
  double alpha = 1.0;

  static PenaltyModel linear() { return {}; }
  static PenaltyModel asymmetric(double alpha) {
    if (!(alpha > 0.0)) throw ValidationError("asymmetric penalty alpha must be > 0");
    return {Kind::linear_asymmetric, alpha};
  }
};

/// Closeness of an item's sodium to the meal target, clamped to [0, 1].
inline double health_score(double item_sodium_mg, const MealBudget& budget, const PenaltyModel& penalty = {}) {
  if (!(budget.target_mg > 0.0)) throw ZeroTarget();
  if (!(item_sodium_mg >= 0.0)) throw ValidationError("item sodium must be >= 0");
  const double d = item_sodium_mg - budget.target_mg;
  const double weight = (penalty.kind == PenaltyModel::Kind::linear_asymmetric && d > 0.0) ? penalty.alpha : 1.0;
  return std::clamp(1.0 - weight * std::abs(d) / budget.target_mg, 0.0, 1.0);
}

// Dense row-major users x items grid.
class UtilityMatrix {
 public:
  UtilityMatrix() = default;
  UtilityMatrix(std::vector<std::string> user_ids, std::vector<std::string> item_ids)
      : user_ids_(std::move(user_ids)), item_ids_(std::move(item_ids)), scores_(user_ids_.size() * item_ids_.size()) {}
  UtilityMatrix(std::vector<std::string> user_ids, std::vector<std::string> item_ids, std::vector<double> scores)
      : user_ids_(std::move(user_ids)), item_ids_(std::move(item_ids)), scores_(std::move(scores)) {
    if (scores_.size() != user_ids_.size() * item_ids_.size())
      throw AxisMismatch("score count does not match matrix dimensions");
    for (double s : scores_) {
      if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("utility scores must lie in [0, 1]");
    }
  }

  std::size_t rows() const noexcept { return user_ids_.size(); }
  std::size_t cols() const noexcept { return item_ids_.size(); }
  const std::vector<std::string>& user_ids() const noexcept { return user_ids_; }
  const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }
  std::span<const double> scores() const noexcept { return scores_; }

  double at(std::size_t u, std::size_t i) const { return scores_.at(u * cols() + i); }
  double& at(std::size_t u, std::size_t i) { return scores_.at(u * cols() + i); }
  std::span<const double> row(std::size_t u) const { return std::span<const double>(scores_).subspan(u * cols(), cols()); }

  bool same_axes(const UtilityMatrix& o) const { return user_ids_ == o.user_ids_ && item_ids_ == o.item_ids_; }

  friend bool operator==(const UtilityMatrix&, const UtilityMatrix&) = default;

 private:
  std::vector<std::string> user_ids_;
  std::vector<std::string> item_ids_;
  std::vector<double> scores_;
};

struct ScoringConfig {
  PhysioConfig physio;
  PenaltyModel penalty;
};

/// scores[u][i] = health_score(item_i sodium, budget of user u). Throws the
/// first physio error, tagged with the offending user_id.
inline UtilityMatrix build_utility_matrix(std::span<const UserProfile> profiles,
                                          std::span<const ScenarioInput> scenarios,
                                          std::span<const MenuItem* const> items, double meal_fraction,
                                          const ScoringConfig& config = {}) {
  if (profiles.size() != scenarios.size()) throw AxisMismatch("one scenario per profile is required");
  std::vector<std::string> user_ids;
  std::vector<std::string> item_ids;
  for (const auto& p : profiles) user_ids.push_back(p.user_id);
  for (const MenuItem* i : items) item_ids.push_back(i->item_id);
  UtilityMatrix m(std::move(user_ids), std::move(item_ids));
  for (std::size_t u = 0; u < profiles.size(); ++u) {
    SodiumNeed need;
    try {
      need = sodium_need(profiles[u], scenarios[u], config.physio);
    } catch (const UnsupportedAge& e) {
      throw UnsupportedAge(e.age(), profiles[u].user_id);
    }
    const MealBudget budget = meal_budget(need, meal_fraction);
    for (std::size_t i = 0; i < items.size(); ++i) m.at(u, i) = health_score(items[i]->sodium_mg, budget, config.penalty);
  }
  return m;
}

/// Entry-wise weighted mean; weights are normalized to sum to one.
inline UtilityMatrix combine_matrices(std::span<const UtilityMatrix> ms, std::span<const double> weights) {
  if (ms.empty()) throw DegenerateWeights("no matrices to combine");
  if (ms.size() != weights.size()) throw AxisMismatch("one weight per matrix is required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DegenerateWeights("weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw DegenerateWeights("weights sum to zero");
  for (const auto& m : ms) {
    if (!m.same_axes(ms[0])) throw AxisMismatch("matrices do not share user/item axes");
  }
  UtilityMatrix out(ms[0].user_ids(), ms[0].item_ids());
  for (std::size_t u = 0; u < out.rows(); ++u) {
    for (std::size_t i = 0; i < out.cols(); ++i) {
      double acc = 0.0;
      double lo = ms[0].at(u, i);
      double hi = lo;
      for (std::size_t k = 0; k < ms.size(); ++k) {
        const double s = ms[k].at(u, i);
        acc += (weights[k] / total) * s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      // Rounding can push the mean a ulp outside the inputs' range.
      out.at(u, i) = std::clamp(acc, lo, hi);
    }
  }
  return out;
}

struct RankedEntry {
  std::string item_id;
  std::string restaurant_id;
  std::string name;
  double score = 0.0;
  double sodium_mg = 0.0;
  double distance_km = 0.0;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

using RankedList = std::vector<RankedEntry>;

// Descending score, then ascending distance, then ascending item_id.
inline bool ranks_before(const RankedEntry& a, const RankedEntry& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.distance_km != b.distance_km) return a.distance_km < b.distance_km;
  return a.item_id < b.item_id;
}

inline RankedList top_k(std::span<const double> scores, std::span<const MenuItem* const> items, std::size_t k,
                        std::span<const double> distances) {
  if (scores.size() != items.size() || distances.size() != items.size())
    throw AxisMismatch("scores, items and distances must have equal length");
  RankedList all;
  all.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    all.push_back({items[i]->item_id, items[i]->restaurant_id, items[i]->name, scores[i], items[i]->sodium_mg,
                   distances[i]});
  }
  const std::size_t n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), ranks_before);
  all.resize(n);
  return all;
}

}  // namespace sodium_scout
