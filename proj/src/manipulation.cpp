#include "shelfplan/manipulation.hpp"

#include <cmath>

namespace shelfplan {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<GraspPose> generate_grasps(const WorldSpec& world, Point2 target) {
  // Headings fan across the half-plane facing the open side: offsets
  // -90 + i*180/(k+1) degrees from the inward normal (+y), i = 1..k.
  const int k = world.grasp_count;
  std::vector<GraspPose> out;
  out.reserve(k);
  for (int i = 1; i <= k; ++i) {
    const double offset_deg = -90.0 + i * 180.0 / (k + 1);
    const double heading = kPi / 2.0 + offset_deg * kPi / 180.0;
    GraspPose g;
    g.target = target;
    g.heading = heading;
    g.gripper = {target, world.gripper_radius};
    const Point2 dir{std::cos(heading), std::sin(heading)};
    g.wrist = {target, target - world.wrist_length * dir, world.gripper_radius};
    out.push_back(g);
  }
  return out;
}

bool footprint_hits_walls(const GraspPose& grasp, const WorldSpec& world) {
  for (const Segment& wall : workspace_walls(world)) {
    if (point_segment_distance(grasp.gripper.center, wall.a, wall.b) < grasp.gripper.radius)
      return true;
    if (capsule_segment_intersect(grasp.wrist, wall)) return true;
  }
  return false;
}

std::vector<int> blocked_by(const GraspPose& grasp, std::span<const Point2> positions,
                            const WorldSpec& world) {
  std::vector<int> out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Disc obstacle{positions[i], world.object_radius};
    if (disc_disc_intersect(grasp.gripper, obstacle) ||
        capsule_disc_intersect(grasp.wrist, obstacle))
      out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace shelfplan
