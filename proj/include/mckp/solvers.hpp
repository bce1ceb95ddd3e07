#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "mckp/csv_io.hpp"
#include "mckp/dominance.hpp"
#include "mckp/model.hpp"
#include "mckp/threshold.hpp"

namespace mckp {

struct SolverConfig {
  // rebuild the angle function every `threshold_batch` steps (1 = every step)
  int threshold_batch = 1;
  PoolWeightMode pool_weights = PoolWeightMode::kIncremental;
  // when set, receives one per-decision latency sample (ns) per customer
  std::vector<double>* step_latency_ns = nullptr;
};

struct TraceRecord {
  std::size_t step = 0;
  std::int64_t customer_id = 0;
  std::int64_t promotion_id = 0;
  double value = 0.0;
  double weight = 0.0;
  double cum_value = 0.0;
  double cum_weight = 0.0;
  double remaining_capacity = 0.0;
  std::optional<double> threshold_angle;
  std::size_t profile_len = 0;
};

struct SolveTrace {
  std::vector<TraceRecord> records;
};

inline void write_trace_csv(const SolveTrace& trace, std::ostream& out) {
  out << "step,customer_id,promotion_id,value,weight,cum_value,cum_weight,"
         "remaining_capacity,threshold_angle,profile_len\n";
  for (const TraceRecord& r : trace.records) {
    out << r.step << ',' << r.customer_id << ',' << r.promotion_id << ','
        << format_double(r.value) << ',' << format_double(r.weight) << ','
        << format_double(r.cum_value) << ',' << format_double(r.cum_weight)
        << ',' << format_double(r.remaining_capacity) << ',';
    if (r.threshold_angle) out << format_double(*r.threshold_angle);
    out << ',' << r.profile_len << '\n';
  }
}

inline std::string trace_to_csv(const SolveTrace& trace) {
  std::ostringstream os;
  write_trace_csv(trace, os);
  return os.str();
}

struct SolveResult {
  Assignment assignment;
  SolveTrace trace;
};

// Evolving state of one threshold-solver run. remaining_capacity always
// equals the initial capacity minus the chosen weights so far, and step
// counts decisions made.
struct SolverState {
  double remaining_capacity = 0.0;
  double cum_value = 0.0;
  double cum_weight = 0.0;
  std::size_t step = 0;
  std::size_t horizon = 0;
  IncrementPool pool;
  SolveTrace trace;
};

namespace detail {

inline std::vector<std::pair<double, double>> pool_increments(
    const DominantProfile& profile, PoolWeightMode mode) {
  std::vector<std::pair<double, double>> out;
  out.reserve(profile.entries.size());
  for (const ProfileEntry& e : profile.entries) {
    const double w =
        mode == PoolWeightMode::kIncremental ? e.inc_weight : e.weight;
    out.emplace_back(e.angle, w);
  }
  return out;
}

// Deepest profile entry whose angle is still >= theta; entry 0 (the
// minimal-weight dominant item) when the threshold is missing or nothing
// qualifies.
inline std::size_t select_entry(const DominantProfile& profile,
                                const std::optional<double>& theta) {
  if (!theta) return 0;
  // angles strictly decrease with the index
  std::size_t qualifying = 0;
  for (const ProfileEntry& e : profile.entries) {
    if (e.angle >= *theta) {
      ++qualifying;
    } else {
      break;
    }
  }
  return qualifying == 0 ? 0 : qualifying - 1;
}

struct StepTimer {
  explicit StepTimer(std::vector<double>* sink) : sink_(sink) {
    if (sink_) start_ = std::chrono::steady_clock::now();
  }
  void lap() {
    if (!sink_) return;
    const auto now = std::chrono::steady_clock::now();
    sink_->push_back(
        std::chrono::duration<double, std::nano>(now - start_).count());
    start_ = now;
  }
  std::vector<double>* sink_;
  std::chrono::steady_clock::time_point start_;
};

// Applies one threshold decision: pick the entry, charge its weight, and
// record the trace row.
inline void decide(SolverState& state, const OfferSet& os,
                   const DominantProfile& profile,
                   const std::optional<double>& theta, Assignment& assignment) {
  ++state.step;
  const std::size_t d = select_entry(profile, theta);
  const ProfileEntry& chosen = profile.entries[d];
  assignment.choices[os.customer_id] = chosen.promotion_id;
  state.remaining_capacity -= chosen.weight;
  state.cum_value += chosen.value;
  state.cum_weight += chosen.weight;
  state.trace.records.push_back({state.step, os.customer_id,
                                 chosen.promotion_id, chosen.value,
                                 chosen.weight, state.cum_value,
                                 state.cum_weight, state.remaining_capacity,
                                 theta, profile.entries.size()});
}

}  // namespace detail

// Per arriving customer: reduce the offer set to its dominant profile, pool
// the increments, refresh the angle function per the batch schedule, and
// take the deepest entry whose angle clears the retrieved threshold.
// Capacity is updated with the chosen item's original weight.
inline SolveResult solve_online(const Instance& instance,
                                const SolverConfig& config = {}) {
  require_valid(instance);
  if (config.threshold_batch < 1) {
    throw ParamError("threshold_batch must be >= 1");
  }
  SolverState state;
  state.remaining_capacity = instance.capacity();
  state.horizon = instance.size();
  state.trace.records.reserve(state.horizon);

  SolveResult out;
  AngleFunction f;
  bool have_f = false;
  detail::StepTimer timer(config.step_latency_ns);
  for (std::size_t i = 1; i <= state.horizon; ++i) {
    const OfferSet& os = instance.offer_sets()[i - 1];
    const DominantProfile profile = build_profile(os);
    state.pool.add_customer(
        detail::pool_increments(profile, config.pool_weights));
    if ((i - 1) % static_cast<std::size_t>(config.threshold_batch) == 0) {
      f = build_function(state.pool);
      have_f = true;
    }
    const std::optional<double> theta =
        have_f ? retrieve_threshold(f, state.remaining_capacity, i,
                                    state.horizon)
               : std::nullopt;
    detail::decide(state, os, profile, theta, out.assignment);
    timer.lap();
  }
  out.assignment.total_value = state.cum_value;
  out.assignment.total_weight = state.cum_weight;
  out.trace = std::move(state.trace);
  return out;
}

// Same selection rule with the angle function fitted once from the whole
// input; capacity and the step counter still update during the decision pass.
inline SolveResult solve_offline_mckp(const Instance& instance,
                                      const SolverConfig& config = {}) {
  require_valid(instance);
  SolverState state;
  state.remaining_capacity = instance.capacity();
  state.horizon = instance.size();
  state.trace.records.reserve(state.horizon);

  std::vector<DominantProfile> profiles;
  profiles.reserve(state.horizon);
  for (const OfferSet& os : instance.offer_sets()) {
    profiles.push_back(build_profile(os));
    state.pool.add_customer(
        detail::pool_increments(profiles.back(), config.pool_weights));
  }
  AngleFunction f;
  if (state.horizon > 0) f = build_function(state.pool);

  SolveResult out;
  detail::StepTimer timer(config.step_latency_ns);
  for (std::size_t i = 1; i <= state.horizon; ++i) {
    const OfferSet& os = instance.offer_sets()[i - 1];
    const std::optional<double> theta =
        retrieve_threshold(f, state.remaining_capacity, i, state.horizon);
    detail::decide(state, os, profiles[i - 1], theta, out.assignment);
    timer.lap();
  }
  out.assignment.total_value = state.cum_value;
  out.assignment.total_weight = state.cum_weight;
  out.trace = std::move(state.trace);
  return out;
}

// One treatment for everyone: the promotion offered to every customer whose
// summed value is maximal within budget; all-base when nothing fits.
inline Assignment solve_global(const Instance& instance) {
  require_valid(instance);
  const std::size_t n = instance.size();
  std::unordered_map<std::int64_t, std::size_t> coverage;
  for (const OfferSet& os : instance.offer_sets()) {
    for (const Item& it : os.items) ++coverage[it.promotion_id];
  }
  std::vector<std::int64_t> candidates;
  for (const auto& [id, count] : coverage) {
    if (count == n) candidates.push_back(id);
  }
  std::sort(candidates.begin(), candidates.end());

  std::int64_t winner = kBasePromotionId;
  double best_value = -std::numeric_limits<double>::infinity();
  bool any_feasible = false;
  for (const std::int64_t id : candidates) {
    double total_value = 0.0;
    double total_weight = 0.0;
    for (const OfferSet& os : instance.offer_sets()) {
      const Item* item = os.find_item(id);
      total_value += item->value;
      total_weight += item->weight;
    }
    if (total_weight > instance.capacity()) continue;
    if (total_value > best_value) {
      best_value = total_value;
      winner = id;
      any_feasible = true;
    }
  }
  if (!any_feasible) winner = kBasePromotionId;

  Assignment a;
  for (const OfferSet& os : instance.offer_sets()) {
    const Item* item = os.find_item(winner);
    a.choices[os.customer_id] = item->promotion_id;
    a.total_value += item->value;
    a.total_weight += item->weight;
  }
  return a;
}

// Per customer independently: highest value among the non-positive-weight
// items; the base always qualifies.
inline Assignment solve_local(const Instance& instance) {
  require_valid(instance);
  Assignment a;
  for (const OfferSet& os : instance.offer_sets()) {
    const Item* best = nullptr;
    for (const Item& it : os.items) {
      if (it.weight > 0.0) continue;
      if (best == nullptr || it.value > best->value ||
          (it.value == best->value && it.promotion_id < best->promotion_id)) {
        best = &it;
      }
    }
    a.choices[os.customer_id] = best->promotion_id;
    a.total_value += best->value;
    a.total_weight += best->weight;
  }
  return a;
}

// Per customer in arrival order: highest value among items within the
// current remaining capacity. When capacity has gone negative and nothing
// fits, takes the minimal-weight item to recover fastest.
inline SolveResult solve_greedy(const Instance& instance) {
  require_valid(instance);
  SolveResult out;
  out.trace.records.reserve(instance.size());
  double remaining = instance.capacity();
  double cum_value = 0.0;
  double cum_weight = 0.0;
  std::size_t step = 0;
  for (const OfferSet& os : instance.offer_sets()) {
    ++step;
    const Item* best = nullptr;
    for (const Item& it : os.items) {
      if (it.weight > remaining) continue;
      if (best == nullptr || it.value > best->value ||
          (it.value == best->value &&
           (it.weight < best->weight ||
            (it.weight == best->weight &&
             it.promotion_id < best->promotion_id)))) {
        best = &it;
      }
    }
    if (best == nullptr) {
      // dead end: remaining capacity below every item weight
      for (const Item& it : os.items) {
        if (best == nullptr || it.weight < best->weight ||
            (it.weight == best->weight &&
             (it.value > best->value ||
              (it.value == best->value &&
               it.promotion_id < best->promotion_id)))) {
          best = &it;
        }
      }
    }
    out.assignment.choices[os.customer_id] = best->promotion_id;
    remaining -= best->weight;
    cum_value += best->value;
    cum_weight += best->weight;
    out.trace.records.push_back({step, os.customer_id, best->promotion_id,
                                 best->value, best->weight, cum_value,
                                 cum_weight, remaining, std::nullopt, 0});
  }
  out.assignment.total_value = cum_value;
  out.assignment.total_weight = cum_weight;
  return out;
}

}  // namespace mckp
