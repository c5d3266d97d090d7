#include "topstat/barcode_metric.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "topstat/interval.hpp"
#include "topstat/rng.hpp"
#include "vendor/doctest.h"

using namespace topstat;

namespace {

const ExtendedReal kInf = ExtendedReal::infinity();

// Random barcode with up to max_per_dim intervals in dimensions 0 and 1,
// mixing bounded intervals with essential ones.
Barcode random_barcode(Rng& rng, int max_per_dim) {
  std::vector<PersistenceInterval> intervals;
  for (int dim = 0; dim <= 1; ++dim) {
    int count = static_cast<int>(rng.uniform() * (max_per_dim + 1));
    for (int i = 0; i < count; ++i) {
      double birth = rng.uniform() * 2.0;
      if (rng.uniform() < 0.3) {
        intervals.emplace_back(dim, birth, kInf);
      } else {
        intervals.emplace_back(dim, birth, birth + rng.uniform_pos());
      }
    }
  }
  return Barcode(intervals);
}

}  // namespace

TEST_CASE("distance between simple hand-checked pairs") {
  auto one = [](PersistenceInterval j) {
    return Barcode(std::vector<PersistenceInterval>{j});
  };
  // Nested intervals: leftover measure is the length difference.
  CHECK(barcode_distance(one({0, 0.0, 1.0}), one({0, 0.0, 2.0})).cost ==
        ExtendedReal(1.0));
  // Disjoint intervals: matching costs both lengths, as does not matching.
  CHECK(barcode_distance(one({0, 0.0, 1.0}), one({0, 2.0, 3.0})).cost ==
        ExtendedReal(2.0));
  // Essential classes match at the distance between their births.
  CHECK(barcode_distance(one({0, 0.5, kInf}), one({0, 2.0, kInf})).cost ==
        ExtendedReal(1.5));
  // Dimensions are matched independently; costs add.
  Barcode left({{0, 0.0, 1.0}, {1, 0.0, 0.5}});
  Barcode right({{0, 0.0, 1.0}});
  CHECK(barcode_distance(left, right).cost == ExtendedReal(0.5));
}

TEST_CASE("identical barcodes are at distance zero with a full matching") {
  Barcode bc({{0, 0.0, kInf}, {0, 0.0, 0.25}, {1, 0.25, 0.5}});
  BarcodeMatching m = barcode_distance(bc, bc);
  CHECK(m.cost == ExtendedReal(0.0));
  CHECK(m.matched.size() == 3);
  CHECK(m.unmatched_left.empty());
  CHECK(m.unmatched_right.empty());
}

TEST_CASE("essential mismatch makes the distance infinite") {
  Barcode essential({{0, 0.0, kInf}});
  Barcode empty;
  CHECK(barcode_distance(essential, empty).cost.is_pos_infinity());
  // A bounded interval cannot absorb an essential one either.
  Barcode bounded({{0, 0.0, 5.0}});
  CHECK(barcode_distance(essential, bounded).cost.is_pos_infinity());
}

TEST_CASE("the distance is symmetric") {
  Rng rng(6021);
  for (int trial = 0; trial < 40; ++trial) {
    Barcode a = random_barcode(rng, 4);
    Barcode b = random_barcode(rng, 4);
    CHECK(barcode_distance(a, b).cost == barcode_distance(b, a).cost);
  }
}

TEST_CASE("unmatched indices partition whatever the matching skips") {
  Barcode a({{0, 0.0, 1.0}, {0, 10.0, 10.5}});
  Barcode b({{0, 0.0, 1.0}});
  BarcodeMatching m = barcode_distance(a, b);
  CHECK(m.cost == ExtendedReal(0.5));
  REQUIRE(m.matched.size() == 1);
  CHECK(m.unmatched_left.size() == 1);
  CHECK(m.unmatched_right.empty());
  // Every left index appears exactly once across matched + unmatched.
  std::vector<bool> seen(a.size(), false);
  for (auto [l, r] : m.matched) seen[l] = true;
  for (int l : m.unmatched_left) seen[l] = true;
  CHECK(seen == std::vector<bool>{true, true});
}

TEST_CASE("assignment solver equals exhaustive enumeration") {
  Rng rng(20240807);
  for (int trial = 0; trial < 200; ++trial) {
    Barcode a = random_barcode(rng, 5);
    Barcode b = random_barcode(rng, 5);
    ExtendedReal fast = barcode_distance(a, b).cost;
    ExtendedReal slow = brute_force_barcode_distance(a, b);
    CHECK(fast == slow);
  }
}

TEST_CASE("the brute-force oracle rejects large inputs") {
  std::vector<PersistenceInterval> many;
  for (int i = 0; i < 7; ++i) many.emplace_back(0, 0.0, 1.0 + i);
  CHECK_THROWS_AS(brute_force_barcode_distance(Barcode(many), Barcode(many)),
                  std::invalid_argument);
}
