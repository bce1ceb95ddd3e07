#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "mckp/dominance.hpp"
#include "support.hpp"

using namespace mckp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("efficiency_angle covers all three branches") {
  REQUIRE(efficiency_angle(0.0, 0.0) == 3.0 * kPi / 2.0);
  REQUIRE(efficiency_angle(1.0, 0.0) == kPi / 2.0);
  REQUIRE(efficiency_angle(-2.0, -2.0) ==
          Catch::Approx(5.0 * kPi / 4.0).margin(1e-12));
  REQUIRE(efficiency_angle(-1.0, -1.0) ==
          Catch::Approx(5.0 * kPi / 4.0).margin(1e-12));
  // negative value, positive weight stays in the plain atan2 branch
  REQUIRE(efficiency_angle(-1.0, 1.0) == std::atan2(-1.0, 1.0));
}

TEST_CASE("efficiency_angle outputs stay in (-pi/2, 3*pi/2]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 5000; ++i) {
    const double angle = efficiency_angle(dist(rng), dist(rng));
    REQUIRE(angle > -kPi / 2.0);
    REQUIRE(angle <= 3.0 * kPi / 2.0);
  }
}

TEST_CASE("dominant_items reproduces the worked examples") {
  const OfferSet mixed = support::offer_set(
      1, {{0, 0.0, 0.0}, {1, 3.0, -2.0}, {2, 1.0, -3.0}, {3, 5.0, 4.0}});
  const auto hull = dominant_items(mixed);
  REQUIRE(hull.size() == 3);
  REQUIRE(hull[0].value == 1.0);
  REQUIRE(hull[0].weight == -3.0);
  REQUIRE(hull[1].value == 3.0);
  REQUIRE(hull[1].weight == -2.0);
  REQUIRE(hull[2].value == 5.0);
  REQUIRE(hull[2].weight == 4.0);

  const OfferSet base_only = support::offer_set(2, {{0, 0.0, 0.0}});
  const auto singleton = dominant_items(base_only);
  REQUIRE(singleton.size() == 1);
  REQUIRE(singleton[0].promotion_id == 0);

  // equal slopes: interior collinear points are dropped
  const OfferSet collinear = support::offer_set(
      3, {{1, 1.0, 1.0}, {2, 2.0, 2.0}, {3, 3.0, 3.0}, {0, 0.0, 0.0}});
  const auto ends = dominant_items(collinear);
  REQUIRE(ends.size() == 2);
  REQUIRE(ends[0].promotion_id == 0);
  REQUIRE(ends[1].promotion_id == 3);
}

TEST_CASE("dominance tie rules are deterministic") {
  // equal weight: highest value survives
  const auto equal_weight = dominant_items(
      support::offer_set(1, {{1, 1.0, 2.0}, {2, 3.0, 2.0}, {0, 0.0, 0.0}}));
  REQUIRE(equal_weight.size() == 2);
  REQUIRE(equal_weight[1].promotion_id == 2);

  // exact duplicates: lowest promotion id survives
  const auto duplicates = dominant_items(
      support::offer_set(1, {{5, 2.0, -1.0}, {3, 2.0, -1.0}, {0, 0.0, 0.0}}));
  REQUIRE(duplicates.size() == 1);
  REQUIRE(duplicates[0].promotion_id == 3);

  // equal value: the lighter item survives
  const auto equal_value = dominant_items(
      support::offer_set(1, {{1, 2.0, 5.0}, {2, 2.0, 1.0}, {0, 0.0, 0.0}}));
  REQUIRE(equal_value.size() == 2);
  REQUIRE(equal_value[1].promotion_id == 2);
  REQUIRE(equal_value[1].weight == 1.0);
}

TEST_CASE("hull matches the brute-force filter on random grid sets") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 2000; ++round) {
    const OfferSet os = support::random_grid_offer_set(rng, round, 11);
    const auto fast = dominant_items(os);
    const auto slow = support::brute_force_dominant(os.items);
    INFO("round " << round);
    REQUIRE(support::same_items(fast, slow));
  }
}

TEST_CASE("hull matches the brute-force filter on random real sets") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 2000; ++round) {
    const OfferSet os = support::random_real_offer_set(rng, round, 11);
    const auto fast = dominant_items(os);
    const auto slow = support::brute_force_dominant(os.items);
    INFO("round " << round);
    REQUIRE(support::same_items(fast, slow));
  }
}

TEST_CASE("profiles carry increments, reconstruct prefixes, and order angles") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 2000; ++round) {
    const OfferSet os = (round % 2 == 0)
                            ? support::random_grid_offer_set(rng, round, 10)
                            : support::random_real_offer_set(rng, round, 10);
    const DominantProfile profile = build_profile(os);
    REQUIRE(!profile.entries.empty());

    double sum_value = 0.0;
    double sum_weight = 0.0;
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < profile.entries.size(); ++d) {
      const ProfileEntry& e = profile.entries[d];
      sum_value += e.inc_value;
      sum_weight += e.inc_weight;
      REQUIRE_THAT(sum_value, Catch::Matchers::WithinRel(e.value, 1e-9) ||
                                  Catch::Matchers::WithinAbs(e.value, 1e-9));
      REQUIRE_THAT(sum_weight, Catch::Matchers::WithinRel(e.weight, 1e-9) ||
                                   Catch::Matchers::WithinAbs(e.weight, 1e-9));
      if (d >= 1) {
        REQUIRE(e.inc_value > 0.0);
        REQUIRE(e.inc_weight > 0.0);
        REQUIRE(e.weight > profile.entries[d - 1].weight);
        REQUIRE(e.value > profile.entries[d - 1].value);
        const double ratio = e.inc_value / e.inc_weight;
        REQUIRE(ratio < prev_ratio);
        prev_ratio = ratio;
        // angle ordering includes d=0 because every set holds the base item
        REQUIRE(e.angle < profile.entries[d - 1].angle);
      }
    }
  }
}

TEST_CASE("worked profile increments and angles") {
  const OfferSet os = support::offer_set(
      1, {{0, 0.0, 0.0}, {1, 3.0, -2.0}, {2, 1.0, -3.0}, {3, 5.0, 4.0}});
  const DominantProfile profile = build_profile(os);
  REQUIRE(profile.entries.size() == 3);

  REQUIRE(profile.entries[0].inc_value == 1.0);
  REQUIRE(profile.entries[0].inc_weight == -3.0);
  REQUIRE(profile.entries[1].inc_value == 2.0);
  REQUIRE(profile.entries[1].inc_weight == 1.0);
  REQUIRE(profile.entries[2].inc_value == 2.0);
  REQUIRE(profile.entries[2].inc_weight == 6.0);

  REQUIRE(profile.entries[0].angle ==
          Catch::Approx(2.819842099193151).margin(1e-12));
  REQUIRE(profile.entries[1].angle ==
          Catch::Approx(1.1071487177940904).margin(1e-12));
  REQUIRE(profile.entries[2].angle ==
          Catch::Approx(0.3217505543966422).margin(1e-12));

  const DominantProfile base_profile =
      build_profile(support::offer_set(2, {{0, 0.0, 0.0}}));
  REQUIRE(base_profile.entries.size() == 1);
  REQUIRE(base_profile.entries[0].angle == 3.0 * kPi / 2.0);

  const DominantProfile negative_profile = profile_from_dominant(
      3, std::vector<Item>{{1, -1.0, -1.0}});
  REQUIRE(negative_profile.entries[0].angle ==
          Catch::Approx(5.0 * kPi / 4.0).margin(1e-12));
}
