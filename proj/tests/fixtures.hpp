#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "shelfplan/world.hpp"

namespace shelfplan::testing {

inline Instance make_instance(const WorldSpec& world, std::vector<Point2> starts,
                              std::vector<Point2> goals) {
  Instance inst;
  inst.world = world;
  for (std::size_t i = 0; i < starts.size(); ++i)
    inst.object_names.push_back("o" + std::to_string(i + 1));
  inst.start.positions = std::move(starts);
  inst.goal.positions = std::move(goals);
  inst.validate();
  return inst;
}

/// Two-column corridor world used by the scripted backjump scenarios. The
/// gripper is fatter than the objects, so two objects in adjacent columns on
/// the same row seal the corridor wall-to-wall.
inline WorldSpec corridor_world() {
  WorldSpec w;
  w.workspace = {{0.0, 0.0}, {4.0, 8.0}};
  w.object_radius = 0.5;
  w.gripper_radius = 0.55;
  w.wrist_length = 0.5;
  w.grid_resolution = 2.0;
  w.grasp_count = 1;
  return w;
}

/// Backjump script: ascending order tries o1 (fine), then o2, whose goal run
/// is sealed by o3-at-start plus o1-at-goal; the first lazy branch fails at
/// its second edge, resumes at the first node, and solves via o1, o3, o2.
inline Instance backjump_instance() {
  // grid: x in {1,3}, y in {1,3,5,7}
  return make_instance(corridor_world(),
                       {{3.0, 6.8}, {1.0, 7.0}, {1.0, 5.0}},   // starts
                       {{3.0, 5.0}, {1.0, 1.0}, {3.0, 1.0}});  // goals
}

/// Wide shallow world with two grasps per position for the constraint-site
/// reconstructions.
inline WorldSpec two_grasp_world() {
  WorldSpec w;
  w.workspace = {{0.0, 0.0}, {12.0, 10.0}};
  w.object_radius = 0.5;
  w.gripper_radius = 0.4;
  w.wrist_length = 3.0;
  w.grid_resolution = 2.0;
  w.grasp_count = 2;
  return w;
}

/// Wrist direction of grasp i (0-based) for a k-grasp world, matching the
/// generator's fan formula.
inline Point2 wrist_direction(int i, int k) {
  const double pi = 3.14159265358979323846;
  const double offset_deg = -90.0 + (i + 1) * 180.0 / (k + 1);
  const double heading = pi / 2.0 + offset_deg * pi / 180.0;
  return {-std::cos(heading), -std::sin(heading)};
}

/// Single-column world with a long wrist: anything in the approach corridor
/// of a grasp blocks it, which makes mutual-block scenes easy to craft.
inline WorldSpec swap_world(double grid_resolution = 0.5) {
  WorldSpec w;
  w.workspace = {{0.0, 0.0}, {4.0, 8.0}};
  w.object_radius = 0.5;
  w.gripper_radius = 0.4;
  w.wrist_length = 2.0;
  w.grid_resolution = grid_resolution;
  w.grasp_count = 1;
  return w;
}

/// Two objects that cannot swap monotonically: o2's start sits in the wrist
/// corridor of o1's goal, and o1's start sits in o2's pick corridor. One
/// buffer move for o1 unlocks everything.
inline Instance swap_instance(double grid_resolution = 0.5) {
  return make_instance(swap_world(grid_resolution),
                       {{1.0, 4.0}, {1.8, 6.2}},   // starts
                       {{1.0, 7.0}, {3.0, 1.0}});  // goals
}

/// Same mutual-block structure in a roomier workspace, so the buffer detour
/// keeps a wide margin from everything. Used by the grid-snapping check.
inline WorldSpec roomy_swap_world() {
  WorldSpec w;
  w.workspace = {{0.0, 0.0}, {8.0, 8.0}};
  w.object_radius = 0.5;
  w.gripper_radius = 0.4;
  w.wrist_length = 2.0;
  w.grid_resolution = 0.5;
  w.grasp_count = 1;
  return w;
}

inline Instance roomy_swap_instance() {
  return make_instance(roomy_swap_world(),
                       {{1.5, 4.0}, {2.3, 6.2}},   // starts
                       {{1.5, 6.5}, {6.5, 1.0}});  // goals
}

/// Five objects where o2's goal sits in o5's single pick corridor: placing o2
/// makes o5 unreachable, so moving o2 while o5 is still at its start must be
/// pruned. o4's goal does the same to o5's place corridor.
inline Instance crowded_corridor_instance();

/// Default-scale world with a single straight grasp, used by the eager-solver
/// counting scene.
inline WorldSpec straight_grasp_world() {
  WorldSpec w;
  w.workspace = {{0.0, 0.0}, {10.0, 8.0}};
  w.object_radius = 0.5;
  w.gripper_radius = 0.4;
  w.wrist_length = 2.0;
  w.grid_resolution = 2.0;
  w.grasp_count = 1;
  return w;
}

/// o3's pick corridor is covered by o1's goal, so any state with o1 placed
/// dead-ends on o3. Orderings (1,2,*) and (2,1,*) both fail through the same
/// arrangement, which the memoized solvers expand once; (2,3,1) solves it.
inline Instance shared_deadend_instance() {
  // grid: x in {1,3,5,7,9}, y in {1,3,5,7}
  return make_instance(straight_grasp_world(),
                       {{3.0, 1.2}, {5.0, 1.1}, {1.0, 6.5}},   // starts
                       {{1.0, 5.0}, {9.0, 1.0}, {5.0, 7.0}});  // goals
}

inline Instance crowded_corridor_instance() {
  return make_instance(
      straight_grasp_world(),
      {{1.4, 6.6}, {7.3, 1.1}, {6.9, 6.8}, {8.4, 3.9}, {5.0, 6.0}},   // starts
      {{1.0, 1.0}, {5.0, 5.0}, {9.0, 1.0}, {9.0, 5.0}, {9.0, 7.0}});  // goals
}

}  // namespace shelfplan::testing
