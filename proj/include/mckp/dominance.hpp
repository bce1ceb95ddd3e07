#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mckp/model.hpp"

namespace mckp {

// Angle of an increment vector, counterclockwise from the positive weight
// axis. The zero increment maps to 3pi/2 and negative-value/non-positive-
// weight increments are lifted by 2pi, so outputs lie in (-pi/2, 3pi/2] and
// larger angles always mean lighter increments.
inline double efficiency_angle(double inc_value, double inc_weight) {
  if (inc_value == 0.0 && inc_weight == 0.0) {
    return 3.0 * std::numbers::pi / 2.0;
  }
  if (inc_value < 0.0 && inc_weight <= 0.0) {
    return 2.0 * std::numbers::pi + std::atan2(inc_value, inc_weight);
  }
  return std::atan2(inc_value, inc_weight);
}

// Upper-left convex hull of the offer set, sorted by increasing weight.
// Survivors strictly increase in both weight and value: equal-weight ties
// keep the highest value, equal (value, weight) ties keep the lowest
// promotion_id, and items on or below a hull segment are dropped.
inline std::vector<Item> dominant_items(const OfferSet& offer_set) {
  std::vector<Item> sorted = offer_set.items;
  std::sort(sorted.begin(), sorted.end(), [](const Item& a, const Item& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.value != b.value) return a.value > b.value;
    return a.promotion_id < b.promotion_id;
  });

  std::vector<Item> hull;
  hull.reserve(sorted.size());
  double best_value = -std::numeric_limits<double>::infinity();
  for (const Item& item : sorted) {
    if (item.value <= best_value) continue;  // dominated by a lighter item
    best_value = item.value;
    // pop middles that are on or below the segment to the new point
    while (hull.size() >= 2) {
      const Item& a = hull[hull.size() - 2];
      const Item& b = hull.back();
      const double lhs = (item.value - b.value) * (b.weight - a.weight);
      const double rhs = (b.value - a.value) * (item.weight - b.weight);
      if (lhs >= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(item);
  }
  return hull;
}

struct ProfileEntry {
  std::int64_t promotion_id = 0;
  double value = 0.0;
  double weight = 0.0;
  double inc_value = 0.0;
  double inc_weight = 0.0;
  double angle = 0.0;
};

// A customer's dominant items with their incremental quantities and
// efficiency angles. Angles strictly decrease with the entry index, and the
// prefix sums of the increments reproduce each entry's (value, weight).
struct DominantProfile {
  std::int64_t customer_id = 0;
  std::vector<ProfileEntry> entries;
};

inline DominantProfile profile_from_dominant(std::int64_t customer_id,
                                             const std::vector<Item>& dominant) {
  DominantProfile profile;
  profile.customer_id = customer_id;
  profile.entries.reserve(dominant.size());
  for (std::size_t d = 0; d < dominant.size(); ++d) {
    ProfileEntry e;
    e.promotion_id = dominant[d].promotion_id;
    e.value = dominant[d].value;
    e.weight = dominant[d].weight;
    if (d == 0) {
      e.inc_value = e.value;
      e.inc_weight = e.weight;
    } else {
      e.inc_value = e.value - dominant[d - 1].value;
      e.inc_weight = e.weight - dominant[d - 1].weight;
    }
    e.angle = efficiency_angle(e.inc_value, e.inc_weight);
    profile.entries.push_back(e);
  }
  return profile;
}

inline DominantProfile build_profile(const OfferSet& offer_set) {
  return profile_from_dominant(offer_set.customer_id,
                               dominant_items(offer_set));
}

}  // namespace mckp
