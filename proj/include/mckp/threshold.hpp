#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "mckp/model.hpp"

namespace mckp {

// What gets pooled alongside each increment's angle: the incremental weight
// (default; required for the cumulative-average packing interpretation) or
// the original item weight (literal reading, kept for comparison runs).
enum class PoolWeightMode { kIncremental, kRaw };

// Pool of (angle, weight) observations from already-seen customers.
// Single-writer; equal angles are merged with their weights summed while
// pool_size keeps counting raw increments.
class IncrementPool {
public:
  void add_customer(const std::vector<std::pair<double, double>>& increments) {
    for (const auto& [angle, weight] : increments) {
      if (!(angle > -half_pi_) || !(angle <= 3.0 * half_pi_)) {
        throw ParamError("pooled angle outside (-pi/2, 3*pi/2]");
      }
      by_angle_[angle] += weight;
      ++pool_size_;
    }
    ++customers_seen_;
  }

  bool empty() const { return pool_size_ == 0; }
  std::size_t pool_size() const { return pool_size_; }
  std::size_t customers_seen() const { return customers_seen_; }

  // angle -> summed weight, iterated in decreasing-angle order
  const std::map<double, double, std::greater<double>>& by_angle() const {
    return by_angle_;
  }

private:
  static constexpr double half_pi_ = std::numbers::pi / 2.0;

  std::map<double, double, std::greater<double>> by_angle_;
  std::size_t pool_size_ = 0;
  std::size_t customers_seen_ = 0;
};

// Piecewise efficiency-angle function f: entries sorted by decreasing angle,
// each carrying the cumulative average weight of the pool above that angle.
// Read-only snapshot; safe to share across threads.
struct AngleFunction {
  struct Entry {
    double angle = 0.0;
    double cumulative = 0.0;
  };
  std::vector<Entry> entries;
  std::size_t pool_size = 0;
  std::size_t customers_seen = 0;

  // suffix_min[p] = min cumulative over entries [p..end); non-decreasing in
  // p, which makes threshold retrieval a binary search.
  std::vector<double> suffix_min;
};

inline AngleFunction build_function(const IncrementPool& pool) {
  if (pool.empty()) {
    throw NoFunctionError("cannot build an angle function from an empty pool");
  }
  AngleFunction f;
  f.pool_size = pool.pool_size();
  f.customers_seen = pool.customers_seen();
  f.entries.reserve(pool.by_angle().size());
  double cumulative = 0.0;
  const double inv_size = 1.0 / static_cast<double>(f.pool_size);
  for (const auto& [angle, weight_sum] : pool.by_angle()) {
    cumulative += weight_sum * inv_size;
    f.entries.push_back({angle, cumulative});
  }
  f.suffix_min.resize(f.entries.size());
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t p = f.entries.size(); p-- > 0;) {
    running = std::min(running, f.entries[p].cumulative);
    f.suffix_min[p] = running;
  }
  return f;
}

// Smallest pooled angle whose cumulative value stays within the remaining
// capacity scaled to the expected number of future increments; empty when no
// entry qualifies.
inline std::optional<double> retrieve_threshold(const AngleFunction& f,
                                                double capacity,
                                                std::size_t i,
                                                std::size_t horizon) {
  if (f.entries.empty() || i < 1 || i > horizon) return std::nullopt;
  const double per_customer =
      static_cast<double>(f.pool_size) / static_cast<double>(i);
  const double remaining_customers = static_cast<double>(horizon - i + 1);
  const double bound = capacity / (per_customer * remaining_customers);

  if (f.suffix_min.front() > bound) return std::nullopt;
  // largest p with suffix_min[p] <= bound; at that p, cumulative == suffix_min
  std::size_t lo = 0;
  std::size_t hi = f.entries.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (f.suffix_min[mid] <= bound) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return f.entries[lo].angle;
}

}  // namespace mckp
