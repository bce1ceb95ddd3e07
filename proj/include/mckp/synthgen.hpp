#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mckp/model.hpp"

namespace mckp {

// Constants are artifact defaults chosen to give the simulated items mass in
// all four value/weight quadrants; they are not fitted to any real dataset.
struct SimParams {
  double conv_scale = 0.4;       // A: mean conversion uplift at discount D is A*D^2
  double conv_var_scale = 0.05;  // S: variance of the uplift draw is S*D^2
  double price = 100.0;          // P: nightly price scale for revenue draws
  double commission = 0.15;      // Cm: per-sale commission rate
  double revenue_var = 25.0;     // S_p: variance of the revenue draw
  std::vector<double> discount_levels = {0.0,  0.05, 0.10, 0.15, 0.20,
                                         0.25, 0.30, 0.35, 0.40};
  std::uint64_t seed = 1;
};

inline void validate_params(const SimParams& p) {
  if (!(p.conv_scale > 0.0) || !std::isfinite(p.conv_scale)) {
    throw ParamError("conv_scale must be positive");
  }
  if (!(p.conv_var_scale > 0.0) || !std::isfinite(p.conv_var_scale)) {
    throw ParamError("conv_var_scale must be positive");
  }
  if (!(p.price > 0.0) || !std::isfinite(p.price)) {
    throw ParamError("price must be positive");
  }
  if (!(p.revenue_var > 0.0) || !std::isfinite(p.revenue_var)) {
    throw ParamError("revenue_var must be positive");
  }
  if (!(p.commission > 0.0) || !(p.commission <= 1.0)) {
    throw ParamError("commission must be in (0, 1]");
  }
  if (p.discount_levels.empty() || p.discount_levels.front() != 0.0) {
    throw ParamError("discount_levels must start with 0");
  }
  for (std::size_t i = 0; i < p.discount_levels.size(); ++i) {
    const double d = p.discount_levels[i];
    if (!std::isfinite(d) || d < 0.0 || d > 1.0) {
      throw ParamError("discount levels must lie in [0, 1]");
    }
    if (i > 0 && d <= p.discount_levels[i - 1]) {
      throw ParamError("discount levels must be strictly increasing");
    }
  }
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Box-Muller with a fixed two-draws-per-sample layout so output bytes do not
// depend on the standard library's normal_distribution implementation.
inline double standard_normal(std::mt19937_64& rng) {
  const double u1 =
      (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

// Each non-base discount level D yields a conversion uplift drawn from
// Normal(A*D^2, S*D^2) and a revenue draw from Normal(P*(Cm-D), S_p); the
// item weight is the negated revenue draw scaled by (1 + uplift). The zero
// level is the exact (0, 0) base item. Customers use derived sub-seeds, so
// output is reproducible regardless of generation order.
inline Instance generate(const SimParams& params, std::int64_t num_customers,
                         double capacity = 0.0) {
  validate_params(params);
  if (num_customers < 1) throw ParamError("num_customers must be >= 1");

  const double sigma_rev = std::sqrt(params.revenue_var);
  std::vector<OfferSet> offer_sets;
  offer_sets.reserve(static_cast<std::size_t>(num_customers));
  for (std::int64_t customer = 1; customer <= num_customers; ++customer) {
    std::mt19937_64 rng(detail::splitmix64(detail::splitmix64(params.seed) +
                                           static_cast<std::uint64_t>(customer)));
    OfferSet os;
    os.customer_id = customer;
    os.items.reserve(params.discount_levels.size());
    for (std::size_t level = 0; level < params.discount_levels.size();
         ++level) {
      const double d = params.discount_levels[level];
      if (d == 0.0) {
        os.items.push_back({static_cast<std::int64_t>(level), 0.0, 0.0});
        continue;
      }
      const double value = params.conv_scale * d * d +
                           d * std::sqrt(params.conv_var_scale) *
                               detail::standard_normal(rng);
      const double revenue = params.price * (params.commission - d) +
                             sigma_rev * detail::standard_normal(rng);
      const double weight = -revenue * (1.0 + value);
      os.items.push_back({static_cast<std::int64_t>(level), value, weight});
    }
    offer_sets.push_back(std::move(os));
  }
  return Instance(std::move(offer_sets), capacity, false);
}

}  // namespace mckp
