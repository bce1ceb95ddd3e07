#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mckp {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
  using Error::Error;
};

class ParamError : public Error {
public:
  using Error::Error;
};

class InvalidInstanceError : public Error {
public:
  using Error::Error;
};

class InvalidAssignmentError : public Error {
public:
  using Error::Error;
};

class InfeasibleError : public Error {
public:
  using Error::Error;
};

class TooLargeError : public Error {
public:
  using Error::Error;
};

class NoFunctionError : public Error {
public:
  using Error::Error;
};

inline constexpr std::int64_t kBasePromotionId = 0;

// One promotion offered to one customer. value is the purchase-probability
// uplift, weight the expected net revenue loss; both may be negative.
struct Item {
  std::int64_t promotion_id = 0;
  double value = 0.0;
  double weight = 0.0;
};

// All eligible promotions of a single customer, including the (0,0) base.
struct OfferSet {
  std::int64_t customer_id = 0;
  std::vector<Item> items;

  bool has_promotion(std::int64_t promotion_id) const {
    return find_item(promotion_id) != nullptr;
  }

  const Item* find_item(std::int64_t promotion_id) const {
    for (const Item& it : items) {
      if (it.promotion_id == promotion_id) return &it;
    }
    return nullptr;
  }
};

// A problem instance. Offer sets are kept in arrival order; capacity is the
// budget on total weight and may be zero or negative. Immutable once built.
class Instance {
public:
  Instance() = default;

  Instance(std::vector<OfferSet> offer_sets, double capacity,
           bool auto_insert_base = true)
      : offer_sets_(std::move(offer_sets)), capacity_(capacity) {
    if (auto_insert_base) {
      for (OfferSet& os : offer_sets_) {
        if (!os.has_promotion(kBasePromotionId)) {
          os.items.push_back(Item{kBasePromotionId, 0.0, 0.0});
        }
      }
    }
    index_.reserve(offer_sets_.size());
    for (std::size_t i = 0; i < offer_sets_.size(); ++i) {
      index_.emplace(offer_sets_[i].customer_id, i);
    }
  }

  const std::vector<OfferSet>& offer_sets() const { return offer_sets_; }
  double capacity() const { return capacity_; }
  std::size_t size() const { return offer_sets_.size(); }

  const OfferSet* find(std::int64_t customer_id) const {
    auto it = index_.find(customer_id);
    return it == index_.end() ? nullptr : &offer_sets_[it->second];
  }

  Instance with_capacity(double capacity) const {
    Instance copy(*this);
    copy.capacity_ = capacity;
    return copy;
  }

private:
  std::vector<OfferSet> offer_sets_;
  double capacity_ = 0.0;
  std::unordered_map<std::int64_t, std::size_t> index_;
};

// One chosen promotion per customer, with the resulting totals.
struct Assignment {
  std::unordered_map<std::int64_t, std::int64_t> choices;
  double total_value = 0.0;
  double total_weight = 0.0;
};

struct Violation {
  std::int64_t customer_id = -1;  // -1 for instance-level violations
  std::string rule;
  std::string message;
};

// Checks every type invariant; violations are data, not failures.
inline std::vector<Violation> validate_instance(const Instance& instance) {
  std::vector<Violation> out;
  std::unordered_map<std::int64_t, int> seen_customers;
  for (const OfferSet& os : instance.offer_sets()) {
    if (++seen_customers[os.customer_id] == 2) {
      out.push_back({os.customer_id, "duplicate customer",
                     "customer id appears more than once"});
    }
    if (os.items.empty()) {
      out.push_back({os.customer_id, "empty offer set", "no items"});
      continue;
    }
    int base_count = 0;
    std::unordered_map<std::int64_t, int> seen_promos;
    for (const Item& it : os.items) {
      if (!std::isfinite(it.value) || !std::isfinite(it.weight)) {
        out.push_back({os.customer_id, "non-finite item",
                       "promotion " + std::to_string(it.promotion_id) +
                           " has a non-finite value or weight"});
      }
      if (++seen_promos[it.promotion_id] == 2) {
        out.push_back({os.customer_id, "duplicate promotion",
                       "promotion " + std::to_string(it.promotion_id) +
                           " appears more than once"});
      }
      if (it.promotion_id == kBasePromotionId) {
        ++base_count;
        if (it.value != 0.0 || it.weight != 0.0) {
          out.push_back({os.customer_id, "base item not zero",
                         "base item must be exactly (0, 0)"});
        }
      }
    }
    if (base_count == 0) {
      out.push_back({os.customer_id, "missing base item",
                     "offer set lacks promotion 0"});
    }
  }
  return out;
}

inline void require_valid(const Instance& instance) {
  const auto violations = validate_instance(instance);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw InvalidInstanceError(
        "invalid instance (" + std::to_string(violations.size()) +
        " violation(s)); first: customer " + std::to_string(v.customer_id) +
        ": " + v.rule);
  }
}

struct EvalResult {
  double total_value = 0.0;
  double total_weight = 0.0;
  bool feasible = false;
};

// Sums the chosen items in arrival order and checks the budget inclusively.
inline EvalResult evaluate_assignment(const Instance& instance,
                                      const Assignment& assignment) {
  if (assignment.choices.size() != instance.size()) {
    throw InvalidAssignmentError(
        "assignment covers " + std::to_string(assignment.choices.size()) +
        " customers, instance has " + std::to_string(instance.size()));
  }
  EvalResult r;
  for (const OfferSet& os : instance.offer_sets()) {
    auto it = assignment.choices.find(os.customer_id);
    if (it == assignment.choices.end()) {
      throw InvalidAssignmentError("assignment misses customer " +
                                   std::to_string(os.customer_id));
    }
    const Item* item = os.find_item(it->second);
    if (item == nullptr) {
      throw InvalidAssignmentError(
          "customer " + std::to_string(os.customer_id) +
          " has no promotion " + std::to_string(it->second));
    }
    r.total_value += item->value;
    r.total_weight += item->weight;
  }
  r.feasible = r.total_weight <= instance.capacity();
  return r;
}

}  // namespace mckp
