#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mckp/dominance.hpp"
#include "mckp/model.hpp"

namespace mckp {

enum class BoundType { kExact, kLpUpper };

inline std::string bound_type_name(BoundType type) {
  return type == BoundType::kExact ? "EXACT" : "LP_UPPER";
}

struct OracleResult {
  BoundType bound_type = BoundType::kExact;
  double value = 0.0;
  std::optional<Assignment> assignment;
  bool feasible = true;
};

// Full enumeration of the choice space in arrival order, items within a
// customer ordered by promotion id. Only strictly better totals replace the
// incumbent, so the reported optimum is the lexicographically smallest one.
inline OracleResult exhaustive_optimum(const Instance& instance,
                                       std::uint64_t combo_limit = 10'000'000) {
  require_valid(instance);
  const std::size_t n = instance.size();

  double combos = 1.0;
  for (const OfferSet& os : instance.offer_sets()) {
    combos *= static_cast<double>(os.items.size());
    if (combos > static_cast<double>(combo_limit)) {
      throw TooLargeError("assignment count exceeds combo limit of " +
                          std::to_string(combo_limit) +
                          "; use lp_upper_bound for instances this large");
    }
  }

  std::vector<std::vector<Item>> menus;
  menus.reserve(n);
  for (const OfferSet& os : instance.offer_sets()) {
    std::vector<Item> menu = os.items;
    std::sort(menu.begin(), menu.end(), [](const Item& a, const Item& b) {
      return a.promotion_id < b.promotion_id;
    });
    menus.push_back(std::move(menu));
  }

  std::vector<std::size_t> pick(n, 0);
  std::vector<std::size_t> best_pick;
  double best_value = 0.0;
  bool found = false;

  std::vector<double> value_prefix(n + 1, 0.0);
  std::vector<double> weight_prefix(n + 1, 0.0);
  std::size_t depth = 0;
  while (true) {
    if (depth == n) {
      if (weight_prefix[n] <= instance.capacity() &&
          (!found || value_prefix[n] > best_value)) {
        best_value = value_prefix[n];
        best_pick = pick;
        found = true;
      }
      // backtrack to the deepest level with an unexplored sibling
      while (depth > 0 && pick[depth - 1] + 1 == menus[depth - 1].size()) {
        --depth;
      }
      if (depth == 0) break;
      ++pick[depth - 1];
      --depth;
    }
    const Item& it = menus[depth][pick[depth]];
    value_prefix[depth + 1] = value_prefix[depth] + it.value;
    weight_prefix[depth + 1] = weight_prefix[depth] + it.weight;
    ++depth;
    if (depth < n) pick[depth] = 0;
  }

  if (!found) {
    throw InfeasibleError("no assignment satisfies the capacity constraint");
  }

  Assignment a;
  for (std::size_t c = 0; c < n; ++c) {
    a.choices[instance.offer_sets()[c].customer_id] =
        menus[c][best_pick[c]].promotion_id;
  }
  const EvalResult eval = evaluate_assignment(instance, a);
  a.total_value = eval.total_value;
  a.total_weight = eval.total_weight;

  OracleResult result;
  result.bound_type = BoundType::kExact;
  result.value = a.total_value;
  result.assignment = std::move(a);
  result.feasible = true;
  return result;
}

// Linear relaxation bound: the minimal-weight dominant item of every customer
// is mandatory, and the remaining capacity is filled with pooled increments
// in decreasing value-to-weight ratio, the last one fractionally. Increments
// beyond the dominant profiles cannot help, so this bounds the exact optimum
// from above.
inline OracleResult lp_upper_bound(const Instance& instance) {
  require_valid(instance);

  struct Increment {
    double value;
    double weight;
    std::size_t customer_index;
    std::size_t depth;
  };

  double mandatory_value = 0.0;
  double mandatory_weight = 0.0;
  std::vector<Increment> increments;
  std::size_t customer_index = 0;
  for (const OfferSet& os : instance.offer_sets()) {
    const DominantProfile profile = build_profile(os);
    mandatory_value += profile.entries.front().value;
    mandatory_weight += profile.entries.front().weight;
    for (std::size_t d = 1; d < profile.entries.size(); ++d) {
      const ProfileEntry& e = profile.entries[d];
      increments.push_back({e.inc_value, e.inc_weight, customer_index, d});
    }
    ++customer_index;
  }
  std::sort(increments.begin(), increments.end(),
            [](const Increment& a, const Increment& b) {
              const double lhs = a.value * b.weight;
              const double rhs = b.value * a.weight;
              if (lhs != rhs) return lhs > rhs;
              if (a.customer_index != b.customer_index) {
                return a.customer_index < b.customer_index;
              }
              return a.depth < b.depth;
            });

  double value = mandatory_value;
  double remaining = instance.capacity() - mandatory_weight;
  for (const Increment& inc : increments) {
    if (remaining <= 0.0) break;
    const double take = std::min(1.0, remaining / inc.weight);
    value += take * inc.value;
    remaining -= take * inc.weight;
  }

  OracleResult result;
  result.bound_type = BoundType::kLpUpper;
  result.value = value;
  result.assignment = std::nullopt;
  result.feasible = mandatory_weight <= instance.capacity();
  return result;
}

}  // namespace mckp
