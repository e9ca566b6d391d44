#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shelfplan/geometry.hpp"

using namespace shelfplan;

TEST_CASE("disc-disc intersection is strict") {
  CHECK_FALSE(disc_disc_intersect({{0, 0}, 1}, {{3, 0}, 1}));
  CHECK(disc_disc_intersect({{0, 0}, 0.2}, {{0, 0}, 5}));
  CHECK(disc_disc_intersect({{0, 0}, 1}, {{1.999, 0}, 1}));  // separation 1.999 < 2
  // tangency is free
  CHECK_FALSE(disc_disc_intersect({{0, 0}, 1}, {{2.0, 0}, 1}));
}

TEST_CASE("capsule-disc intersection") {
  const Capsule c{{0, 0}, {10, 0}, 1};
  CHECK_FALSE(capsule_disc_intersect(c, {{5, 3}, 1}));
  CHECK(capsule_disc_intersect(c, {{5, 1.5}, 1}));
  // zero-length capsule degenerates to a disc
  CHECK(capsule_disc_intersect({{0, 0}, {0, 0}, 1}, {{1.5, 0}, 1}));
}

TEST_CASE("disc containment in rect allows boundary contact") {
  const Rect r{{0, 0}, {10, 10}};
  CHECK(disc_in_rect({{5, 5}, 1}, r));
  CHECK_FALSE(disc_in_rect({{0.5, 5}, 1}, r));
  CHECK(disc_in_rect({{1, 1}, 1}, r));  // tangent to two edges
}

TEST_CASE("segment-segment distance") {
  CHECK(segment_segment_distance({0, 0}, {10, 0}, {5, -3}, {5, 3}) == doctest::Approx(0.0));
  CHECK(segment_segment_distance({0, 0}, {10, 0}, {0, 2}, {10, 2}) == doctest::Approx(2.0));
  CHECK(segment_segment_distance({0, 0}, {1, 0}, {3, 0}, {4, 0}) == doctest::Approx(2.0));
  // degenerate segments are points
  CHECK(segment_segment_distance({1, 1}, {1, 1}, {4, 5}, {4, 5}) == doctest::Approx(5.0));
}

TEST_CASE("disc-disc symmetry and radius monotonicity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-10, 10);
  std::uniform_real_distribution<double> radius(0.05, 3.0);
  std::uniform_real_distribution<double> shrink(0.1, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const Disc a{{coord(rng), coord(rng)}, radius(rng)};
    const Disc b{{coord(rng), coord(rng)}, radius(rng)};
    CHECK(disc_disc_intersect(a, b) == disc_disc_intersect(b, a));
    if (!disc_disc_intersect(a, b)) {
      const Disc a2{a.center, a.radius * shrink(rng)};
      const Disc b2{b.center, b.radius * shrink(rng)};
      CHECK_FALSE(disc_disc_intersect(a2, b2));
    }
  }
}

TEST_CASE("zero-length capsules behave exactly like discs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-10, 10);
  std::uniform_real_distribution<double> radius(0.05, 3.0);
  for (int i = 0; i < 10000; ++i) {
    const Point2 p{coord(rng), coord(rng)};
    const Capsule c{p, p, radius(rng)};
    const Disc d{{coord(rng), coord(rng)}, radius(rng)};
    CHECK(capsule_disc_intersect(c, d) == disc_disc_intersect({p, c.radius}, d));
  }
}

TEST_CASE("capsule-disc agrees with a dense sampling oracle away from tangency") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coord(-10, 10);
  std::uniform_real_distribution<double> radius(0.05, 2.0);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Capsule c{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}, radius(rng)};
    const Disc d{{coord(rng), coord(rng)}, radius(rng)};
    const double gap = point_segment_distance(d.center, c.a, c.b) - (c.radius + d.radius);
    // The oracle samples 10^3 points, so its own resolution limits how close
    // to tangency it can be trusted; outside that band agreement is exact.
    const double band = std::max(1e-6, distance(c.a, c.b) / 1000.0);
    if (std::abs(gap) <= band) continue;
    ++checked;
    CHECK(capsule_disc_intersect(c, d) == testing::sampled_capsule_disc_intersect(c, d));
  }
  CHECK(checked > 9000);
}
