#include "shelfplan/validate.hpp"

#include <algorithm>

#include "shelfplan/manipulation.hpp"

namespace shelfplan {

namespace {

bool sweep_clear(Point2 a, Point2 b, double radius, const std::vector<Disc>& obstacles,
                 const std::vector<Segment>& walls) {
  const Capsule sweep{a, b, radius};
  for (const Disc& d : obstacles)
    if (capsule_disc_intersect(sweep, d)) return false;
  for (const Segment& w : walls)
    if (capsule_segment_intersect(sweep, w)) return false;
  return true;
}

bool some_grasp_free(const WorldSpec& world, Point2 site, const std::vector<Disc>& obstacles) {
  for (const GraspPose& g : generate_grasps(world, site)) {
    if (footprint_hits_walls(g, world)) continue;
    bool free = true;
    for (const Disc& d : obstacles)
      if (disc_disc_intersect(g.gripper, d) || capsule_disc_intersect(g.wrist, d)) {
        free = false;
        break;
      }
    if (free) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> validate_plan(const Instance& instance, const Plan& plan) {
  std::vector<std::string> problems;
  const WorldSpec& world = instance.world;
  const auto walls = workspace_walls(world);
  Arrangement current = instance.start;

  auto complain = [&problems](int step, const std::string& what) {
    problems.push_back("action " + std::to_string(step) + ": " + what);
  };

  int buffer_moves = 0;
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    const PlanAction& a = plan.actions[i];
    const int step = static_cast<int>(i);
    if (a.object < 0 || a.object >= current.size()) {
      complain(step, "object index out of range");
      return problems;
    }
    if (!same_position(a.from, current[a.object]))
      complain(step, "'from' does not match the current arrangement");
    if (a.kind == EdgeKind::GoalMove && !same_position(a.to, instance.goal[a.object]))
      complain(step, "goal move does not end at the object's goal");
    if (a.kind == EdgeKind::BufferMove) ++buffer_moves;
    if (!placement_free(current, a.object, a.to, world))
      complain(step, "placement collides or leaves the workspace");

    std::vector<Disc> obstacles;
    for (int j = 0; j < current.size(); ++j)
      if (j != a.object) obstacles.push_back({current[j], world.object_radius});

    if (a.transit.waypoints.size() < 2 ||
        !same_position(a.transit.waypoints.front(), staging_point(world)) ||
        !same_position(a.transit.waypoints.back(), a.from))
      complain(step, "transit endpoints are wrong");
    if (a.transfer.waypoints.size() < 2 || !same_position(a.transfer.waypoints.front(), a.from) ||
        !same_position(a.transfer.waypoints.back(), a.to))
      complain(step, "transfer endpoints are wrong");

    for (std::size_t w = 0; w + 1 < a.transit.waypoints.size(); ++w)
      if (!sweep_clear(a.transit.waypoints[w], a.transit.waypoints[w + 1], world.gripper_radius,
                       obstacles, walls)) {
        complain(step, "transit sweep collides");
        break;
      }
    const double carry = std::max(world.gripper_radius, world.object_radius);
    for (std::size_t w = 0; w + 1 < a.transfer.waypoints.size(); ++w)
      if (!sweep_clear(a.transfer.waypoints[w], a.transfer.waypoints[w + 1], carry, obstacles,
                       walls)) {
        complain(step, "transfer sweep collides");
        break;
      }

    if (!some_grasp_free(world, a.from, obstacles)) complain(step, "no free grasp at pick");
    if (!some_grasp_free(world, a.to, obstacles)) complain(step, "no free grasp at place");

    current.positions[a.object] = a.to;
  }

  if (!(current == instance.goal)) problems.push_back("plan does not end at the goal arrangement");
  if (buffer_moves != plan.buffers_used)
    problems.push_back("buffers_used does not match the number of buffer moves");
  return problems;
}

}  // namespace shelfplan
