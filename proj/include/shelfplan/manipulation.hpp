#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "shelfplan/geometry.hpp"
#include "shelfplan/world.hpp"

namespace shelfplan {

/// One grasp of an object position: the gripper disc sits on the target and
/// the wrist capsule trails opposite the approach heading, toward the open
/// side for the middle of the fan.
struct GraspPose {
  Point2 target;
  double heading = 0.0;  // approach direction, radians
  Disc gripper;
  Capsule wrist;
};

/// Exactly k poses, headings fanned evenly across the half-plane facing the
/// open side. Poses whose footprint pokes through a wall are kept; they are
/// simply never usable.
std::vector<GraspPose> generate_grasps(const WorldSpec& world, Point2 target);

bool footprint_hits_walls(const GraspPose& grasp, const WorldSpec& world);

/// Indices of `positions` whose object disc overlaps the grasp footprint.
std::vector<int> blocked_by(const GraspPose& grasp, std::span<const Point2> positions,
                            const WorldSpec& world);

struct MotionStats {
  std::uint64_t planner_calls = 0;
  std::uint64_t collision_checks = 0;
};

enum class PathPhase { Transit, Transfer };

struct MotionPath {
  std::vector<Point2> waypoints;
  int carried_object = -1;  // -1 during transit
  PathPhase phase = PathPhase::Transit;
};

struct PickPlaceQuery {
  Arrangement arrangement;
  int object = -1;
  Point2 place_at;
};

struct PickPlaceResult {
  MotionPath transit;
  MotionPath transfer;
  GraspPose used_pick;
  GraspPose used_place;
};

enum class PlannerKind { Grid, Roadmap };

struct PlannerConfig {
  PlannerKind kind = PlannerKind::Grid;
  int grid_factor = 4;        // A* lattice step = grid_resolution / grid_factor
  int roadmap_samples = 2000;
  std::uint64_t roadmap_seed = 1;
};

/// Pick-and-place motion oracle. The default is a deterministic 8-connected
/// A* over gripper-center positions; a PRM-style roadmap with the same
/// collision checker is available behind the same interface.
class MotionPlanner {
 public:
  explicit MotionPlanner(const WorldSpec& world, PlannerConfig config = {});

  /// Transit (staging -> pick, gripper radius) plus transfer (pick -> place,
  /// max of gripper and object radius), both avoiding every other object and
  /// the walls. Wrist feasibility is imposed at the pick and place poses.
  /// Absence of a path is a nullopt, not an error.
  std::optional<PickPlaceResult> plan_pick_and_place(const PickPlaceQuery& query,
                                                     MotionStats& stats) const;

  std::optional<std::vector<Point2>> plan_path(Point2 from, Point2 to, double radius,
                                               std::span<const Disc> obstacles,
                                               MotionStats& stats) const;

  bool sweep_free(Point2 a, Point2 b, double radius, std::span<const Disc> obstacles,
                  MotionStats& stats) const;

  const WorldSpec& world() const { return world_; }
  const PlannerConfig& config() const { return config_; }

 private:
  std::optional<std::vector<Point2>> grid_plan(Point2 from, Point2 to, double radius,
                                               std::span<const Disc> obstacles,
                                               MotionStats& stats) const;
  std::optional<std::vector<Point2>> roadmap_plan(Point2 from, Point2 to, double radius,
                                                  std::span<const Disc> obstacles,
                                                  MotionStats& stats) const;

  WorldSpec world_;
  PlannerConfig config_;
  std::vector<Segment> walls_;
  double step_ = 0.0;
  int nx_ = 0;
  int jmin_ = 0;
  int jmax_ = 0;
  double region_ymin_ = 0.0;
  std::vector<Point2> samples_;
  std::vector<std::vector<int>> sample_links_;
  double link_radius_ = 0.0;
};

/// Single gateway for edge verification: one pick-and-place query per lazy
/// edge, memoized on (parent arrangement, object, target) so re-verifying an
/// edge is free. One verifier lives for one solver or global-planner run.
class EdgeVerifier {
 public:
  EdgeVerifier(const MotionPlanner& planner, bool use_cache);

  /// Parent and child must differ in exactly one object's position
  /// (MalformedEdgeError otherwise). Returned reference stays valid for the
  /// verifier's lifetime.
  const std::optional<PickPlaceResult>& verify(const Arrangement& parent,
                                               const Arrangement& child);

  const MotionPlanner& planner() const { return planner_; }

  MotionStats motion;
  std::uint64_t edges_verified = 0;        // uncached evaluations that passed
  std::uint64_t failed_verifications = 0;  // uncached evaluations that failed
  std::uint64_t cache_hit_success = 0;
  std::uint64_t cache_hit_fail = 0;
  double verify_ms = 0.0;

 private:
  struct Key {
    Arrangement parent;
    int object;
    Point2 target;
    bool operator==(const Key& o) const {
      return object == o.object && same_position(target, o.target) && parent == o.parent;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  const MotionPlanner& planner_;
  bool use_cache_;
  std::unordered_map<Key, std::optional<PickPlaceResult>, KeyHash> cache_;
  std::optional<PickPlaceResult> uncached_slot_;
};

}  // namespace shelfplan
