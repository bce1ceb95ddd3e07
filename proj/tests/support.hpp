#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mckp/model.hpp"

namespace support {

inline mckp::OfferSet offer_set(std::int64_t customer_id,
                                std::vector<mckp::Item> items) {
  mckp::OfferSet os;
  os.customer_id = customer_id;
  os.items = std::move(items);
  return os;
}

// Offer set on an integer grid. Grid coordinates make collinear points and
// exact ties common, which is what the dominance tie rules have to survive,
// and all hull arithmetic stays exact in doubles.
inline mckp::OfferSet random_grid_offer_set(std::mt19937_64& rng,
                                            std::int64_t customer_id,
                                            int max_extra_items,
                                            bool include_base = true) {
  std::uniform_int_distribution<int> count_dist(0, max_extra_items);
  std::uniform_int_distribution<int> coord(-8, 8);
  mckp::OfferSet os;
  os.customer_id = customer_id;
  if (include_base) os.items.push_back({mckp::kBasePromotionId, 0.0, 0.0});
  const int extras = count_dist(rng);
  for (int k = 1; k <= extras; ++k) {
    os.items.push_back({k, static_cast<double>(coord(rng)),
                        static_cast<double>(coord(rng))});
  }
  std::shuffle(os.items.begin(), os.items.end(), rng);
  return os;
}

inline mckp::OfferSet random_real_offer_set(std::mt19937_64& rng,
                                            std::int64_t customer_id,
                                            int max_extra_items,
                                            bool include_base = true) {
  std::uniform_int_distribution<int> count_dist(0, max_extra_items);
  std::uniform_real_distribution<double> value_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> weight_dist(-4.0, 4.0);
  mckp::OfferSet os;
  os.customer_id = customer_id;
  if (include_base) os.items.push_back({mckp::kBasePromotionId, 0.0, 0.0});
  const int extras = count_dist(rng);
  for (int k = 1; k <= extras; ++k) {
    os.items.push_back({k, value_dist(rng), weight_dist(rng)});
  }
  std::shuffle(os.items.begin(), os.items.end(), rng);
  return os;
}

inline mckp::Instance random_instance(std::mt19937_64& rng, int max_customers,
                                      int max_extra_items, double capacity) {
  std::uniform_int_distribution<int> count_dist(1, max_customers);
  const int n = count_dist(rng);
  std::vector<mckp::OfferSet> sets;
  sets.reserve(static_cast<std::size_t>(n));
  for (int c = 1; c <= n; ++c) {
    sets.push_back(random_real_offer_set(rng, c, max_extra_items));
  }
  return mckp::Instance(std::move(sets), capacity);
}

// Independent dominance oracle: removes an item when a single other item is
// no heavier and at least as valuable (strictly better on one axis, or an
// exact duplicate with a lower id), then removes anything on or below the
// straight line through two surviving items. Quadratic on purpose; shares no
// code with the hull sweep.
inline std::vector<mckp::Item> brute_force_dominant(
    const std::vector<mckp::Item>& items) {
  std::vector<mckp::Item> kept;
  for (const mckp::Item& b : items) {
    bool removed = false;
    for (const mckp::Item& a : items) {
      if (a.promotion_id == b.promotion_id) continue;
      const bool duplicate = a.value == b.value && a.weight == b.weight;
      if ((a.weight < b.weight && a.value >= b.value) ||
          (a.weight <= b.weight && a.value > b.value) ||
          (duplicate && a.promotion_id < b.promotion_id)) {
        removed = true;
        break;
      }
    }
    if (!removed) kept.push_back(b);
  }

  std::vector<mckp::Item> out;
  for (const mckp::Item& b : kept) {
    bool covered = false;
    for (const mckp::Item& a : kept) {
      for (const mckp::Item& c : kept) {
        if (!(a.weight < b.weight && b.weight < c.weight)) continue;
        // b on or below the chord from a to c
        if ((b.value - a.value) * (c.weight - a.weight) <=
            (c.value - a.value) * (b.weight - a.weight)) {
          covered = true;
        }
      }
    }
    if (!covered) out.push_back(b);
  }
  std::sort(out.begin(), out.end(),
            [](const mckp::Item& a, const mckp::Item& b) {
              return a.weight < b.weight;
            });
  return out;
}

inline bool same_items(const std::vector<mckp::Item>& a,
                       const std::vector<mckp::Item>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].promotion_id != b[i].promotion_id || a[i].value != b[i].value ||
        a[i].weight != b[i].weight) {
      return false;
    }
  }
  return true;
}

inline double mean(const std::vector<double>& xs) {
  double acc = 0.0;
  for (const double x : xs) acc += x;
  return xs.empty() ? 0.0 : acc / static_cast<double>(xs.size());
}

inline double stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double acc = 0.0;
  for (const double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size()));
}

}  // namespace support
