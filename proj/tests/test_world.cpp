#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "shelfplan/errors.hpp"
#include "shelfplan/json_io.hpp"
#include "shelfplan/world.hpp"

using namespace shelfplan;

namespace {

WorldSpec square_world(double side, double r_obj, double delta) {
  WorldSpec w = default_world();
  w.workspace = {{0, 0}, {side, side}};
  w.object_radius = r_obj;
  w.grid_resolution = delta;
  return w;
}

}  // namespace

TEST_CASE("build_grid lays out the inset lattice") {
  const PositionGrid grid = build_grid(square_world(10, 1, 2));
  REQUIRE(grid.positions.size() == 25);
  const double expected[] = {1, 3, 5, 7, 9};
  int idx = 0;
  for (double y : expected)
    for (double x : expected) {
      CHECK(grid.positions[idx].x == doctest::Approx(x));
      CHECK(grid.positions[idx].y == doctest::Approx(y));
      ++idx;
    }
}

TEST_CASE("build_grid degenerate cases") {
  const PositionGrid one = build_grid(square_world(2, 1, 1));
  REQUIRE(one.positions.size() == 1);
  CHECK(one.positions[0].x == doctest::Approx(1.0));
  CHECK(one.positions[0].y == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_grid(square_world(1, 1, 1)), EmptyGridError);
}

TEST_CASE("build_grid positions are unique and row-major") {
  for (const WorldSpec& w : {default_world(), testing::corridor_world(), testing::swap_world()}) {
    const PositionGrid grid = build_grid(w);
    for (std::size_t i = 1; i < grid.positions.size(); ++i) {
      const Point2 a = grid.positions[i - 1];
      const Point2 b = grid.positions[i];
      CHECK((b.y > a.y || (b.y == a.y && b.x > a.x)));
    }
    for (const Point2& p : grid.positions)
      CHECK(disc_in_rect({p, w.object_radius}, w.workspace));
  }
}

TEST_CASE("sample_instance is deterministic and respects invariants") {
  const WorldSpec world = default_world();
  const Instance a = sample_instance(world, 6, 42);
  const Instance b = sample_instance(world, 6, 42);
  CHECK(a.start == b.start);
  CHECK(a.goal == b.goal);
  CHECK(a.object_names == b.object_names);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = sample_instance(world, 8, seed);
    CHECK_NOTHROW(inst.validate());
  }
}

TEST_CASE("sample_instance with n = |grid| permutes the whole grid") {
  const WorldSpec world = default_world();
  const PositionGrid grid = build_grid(world);
  const Instance inst = sample_instance(world, static_cast<int>(grid.positions.size()), 3);
  std::vector<char> hit(grid.positions.size(), 0);
  for (const Point2& g : inst.goal.positions) {
    const int idx = grid.index_of(g);
    REQUIRE(idx >= 0);
    CHECK(!hit[idx]);
    hit[idx] = 1;
  }
}

TEST_CASE("sample_instance start invariants over many seeds") {
  const WorldSpec world = default_world();
  for (std::uint64_t seed = 1000; seed < 2000; ++seed) {
    const Instance inst = sample_instance(world, 2 + static_cast<int>(seed % 5), seed);
    CHECK_NOTHROW(inst.validate());
  }
}

TEST_CASE("apply_move is persistent and checks its preconditions") {
  const WorldSpec world = default_world();
  const Instance inst = sample_instance(world, 5, 9);

  const Arrangement before = inst.start;
  const Arrangement same = apply_move(inst.start, 0, inst.start[0], world);
  CHECK(same == inst.start);

  // move to some free grid cell
  Point2 target{-1, -1};
  for (const Point2& cell : build_grid(world).positions)
    if (placement_free(inst.start, 0, cell, world)) {
      target = cell;
      break;
    }
  REQUIRE(target.x >= 0);
  const Arrangement moved = apply_move(inst.start, 0, target, world);
  CHECK(inst.start == before);  // source unchanged
  int diffs = 0;
  for (int i = 0; i < inst.start.size(); ++i)
    if (!same_position(moved[i], inst.start[i])) ++diffs;
  CHECK(diffs == 1);
  CHECK(same_position(moved[0], target));

  CHECK_THROWS_AS(apply_move(inst.start, 0, inst.start[1], world), PlacementCollisionError);
  CHECK_THROWS_AS(apply_move(inst.start, 0, {-5.0, -5.0}, world), OutOfWorkspaceError);
}

TEST_CASE("instance json round-trip") {
  const Instance inst = sample_instance(default_world(), 4, 77);
  const std::string path = "/tmp/shelfplan_test_instance.json";
  save_instance(inst, path);
  const Instance loaded = load_instance(path);
  CHECK(loaded.start == inst.start);
  CHECK(loaded.goal == inst.goal);
  CHECK(loaded.object_names == inst.object_names);
  std::remove(path.c_str());
}

TEST_CASE("load_instance names the missing key") {
  const Instance inst = sample_instance(default_world(), 3, 5);
  nlohmann::json j = instance_to_json(inst);
  j.erase("goal");
  const std::string path = "/tmp/shelfplan_test_nogoal.json";
  {
    std::ofstream out(path);
    out << j.dump();
  }
  CHECK_THROWS_WITH_AS(load_instance(path), doctest::Contains("goal"), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("hand-written two-object instance loads") {
  const std::string path = "/tmp/shelfplan_test_two.json";
  {
    std::ofstream out(path);
    out << R"({
      "world": {"workspace": [0,0,10,8], "object_radius": 0.5, "gripper_radius": 0.4,
                "wrist_length": 8.0, "grid_resolution": 2.0, "grasp_count": 3},
      "objects": ["o1", "o2"],
      "start": {"o1": [2.5, 2.5], "o2": [6.5, 3.5]},
      "goal":  {"o1": [1.0, 1.0], "o2": [9.0, 7.0]}
    })";
  }
  const Instance inst = load_instance(path);
  CHECK(inst.object_count() == 2);
  CHECK(same_position(inst.start[1], {6.5, 3.5}));
  CHECK(same_position(inst.goal[0], {1.0, 1.0}));
  std::remove(path.c_str());
}
