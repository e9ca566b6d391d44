#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "shelfplan/geometry.hpp"

namespace shelfplan {

/// Workspace with three walls; the gripper enters through the open side
/// at y = workspace.min.y.
enum class OpenSide { Front };

struct WorldSpec {
  Rect workspace;
  OpenSide open_side = OpenSide::Front;
  double object_radius = 0.5;
  double gripper_radius = 0.4;
  double wrist_length = 8.0;
  double grid_resolution = 2.0;  // delta_r, spacing of candidate positions
  int grasp_count = 3;           // k grasp headings per position

  void validate() const;  // throws std::invalid_argument
};

/// The bench worlds default to this spec.
WorldSpec default_world();

/// Left, back and right walls as segments; the front edge is open.
std::vector<Segment> workspace_walls(const WorldSpec& world);

/// Fixed gripper parking spot outside the open side: centered, one gripper
/// diameter below the front edge.
Point2 staging_point(const WorldSpec& world);

/// Candidate object positions, row-major (y then x ascending), centered in
/// the workspace and inset so object discs fit entirely inside.
struct PositionGrid {
  std::vector<Point2> positions;
  double resolution = 0.0;

  int index_of(Point2 p) const;  // exact match, -1 if absent
};

PositionGrid build_grid(const WorldSpec& world);  // throws EmptyGridError

/// Assignment of every object to a position. Objects are dense indices
/// 0..n-1; the instance maps them to names. Value semantics; equality and
/// hashing are exact (bit-level), which the memoizing solvers rely on.
struct Arrangement {
  std::vector<Point2> positions;

  int size() const { return static_cast<int>(positions.size()); }
  Point2 operator[](int object) const { return positions[object]; }

  bool operator==(const Arrangement& other) const;
};

struct ArrangementHash {
  std::size_t operator()(const Arrangement& a) const;
};

struct Instance {
  WorldSpec world;
  std::vector<std::string> object_names;  // "o1", "o2", ...
  Arrangement start;                      // continuous positions
  Arrangement goal;                       // grid positions

  int object_count() const { return static_cast<int>(object_names.size()); }
  int object_index(const std::string& name) const;  // -1 if absent
  void validate() const;                            // throws on broken invariants
};

/// Starts are rejection-sampled in continuous free space; goals are a random
/// n-subset of the grid under a random bijection. Deterministic per seed.
Instance sample_instance(const WorldSpec& world, int n, std::uint64_t rng_seed);

/// True iff placing `object` at p collides with no other object of `a` and
/// the disc stays inside the workspace.
bool placement_free(const Arrangement& a, int object, Point2 p, const WorldSpec& world);

/// Persistent update: returns a copy with `object` moved to p.
/// Throws PlacementCollisionError / OutOfWorkspaceError.
Arrangement apply_move(const Arrangement& a, int object, Point2 p, const WorldSpec& world);

}  // namespace shelfplan
