#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "shelfplan/manipulation.hpp"
#include "shelfplan/world.hpp"

namespace shelfplan::testing {

/// Dense-sampling stand-in for the capsule/disc predicate: test the moving
/// disc at many points along the segment.
inline bool sampled_capsule_disc_intersect(const Capsule& c, const Disc& d, int samples = 1000) {
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const Point2 p = c.a + t * (c.b - c.a);
    if (disc_disc_intersect({p, c.radius}, d)) return true;
  }
  return false;
}

/// Flood-fill feasibility oracle for pick-and-place queries, independent of
/// the A* search: grasp checks plus 4-connected BFS reachability at a finer
/// resolution than the planner's lattice.
class BfsOracle {
 public:
  BfsOracle(const WorldSpec& world, int fineness = 16)
      : world_(world), walls_(workspace_walls(world)) {
    step_ = world.grid_resolution / fineness;
    const Rect& r = world.workspace;
    nx_ = static_cast<int>((r.max.x - r.min.x) / step_) + 1;
    jmin_ = -static_cast<int>(std::ceil((2.0 * world.gripper_radius + 2.0 * step_) / step_));
    rows_ = static_cast<int>((r.max.y - r.min.y) / step_) + 1 - jmin_;
  }

  bool point_free(Point2 p, double radius, const std::vector<Disc>& obstacles) const {
    for (const Disc& d : obstacles)
      if (disc_disc_intersect({p, radius}, d)) return false;
    for (const Segment& w : walls_)
      if (point_segment_distance(p, w.a, w.b) < radius) return false;
    return true;
  }

  bool reachable(Point2 from, Point2 to, double radius, const std::vector<Disc>& obstacles) const {
    auto cell_of = [&](Point2 p) {
      const int i = static_cast<int>(std::round((p.x - world_.workspace.min.x) / step_));
      const int j =
          static_cast<int>(std::round((p.y - world_.workspace.min.y) / step_)) - jmin_;
      return std::pair<int, int>{i, j};
    };
    auto in_range = [&](int i, int j) { return i >= 0 && i < nx_ && j >= 0 && j < rows_; };
    auto point_at = [&](int i, int j) {
      return Point2{world_.workspace.min.x + i * step_,
                    world_.workspace.min.y + (j + jmin_) * step_};
    };
    const auto [si, sj] = cell_of(from);
    const auto [ti, tj] = cell_of(to);
    if (!in_range(si, sj) || !in_range(ti, tj)) return false;
    if (!point_free(from, radius, obstacles) || !point_free(to, radius, obstacles)) return false;
    std::vector<char> seen(static_cast<std::size_t>(nx_) * rows_, 0);
    std::vector<std::pair<int, int>> queue{{si, sj}};
    seen[sj * nx_ + si] = 1;
    std::size_t head = 0;
    while (head < queue.size()) {
      const auto [i, j] = queue[head++];
      if (i == ti && j == tj) return true;
      const int di[] = {1, -1, 0, 0};
      const int dj[] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d];
        const int nj = j + dj[d];
        if (!in_range(ni, nj) || seen[nj * nx_ + ni]) continue;
        if (!point_free(point_at(ni, nj), radius, obstacles)) continue;
        seen[nj * nx_ + ni] = 1;
        queue.emplace_back(ni, nj);
      }
    }
    return false;
  }

  /// Same feasibility question plan_pick_and_place answers.
  bool pick_place_feasible(const Arrangement& arrangement, int object, Point2 place_at) const {
    std::vector<Disc> obstacles;
    for (int j = 0; j < arrangement.size(); ++j)
      if (j != object) obstacles.push_back({arrangement[j], world_.object_radius});
    auto grasp_ok = [&](Point2 site) {
      for (const GraspPose& g : generate_grasps(world_, site)) {
        if (footprint_hits_walls(g, world_)) continue;
        bool free = true;
        for (const Disc& d : obstacles)
          if (disc_disc_intersect(g.gripper, d) || capsule_disc_intersect(g.wrist, d)) {
            free = false;
            break;
          }
        if (free) return true;
      }
      return false;
    };
    const Point2 from = arrangement[object];
    if (!grasp_ok(from) || !grasp_ok(place_at)) return false;
    if (!reachable(staging_point(world_), from, world_.gripper_radius, obstacles)) return false;
    const double carry = std::max(world_.gripper_radius, world_.object_radius);
    return reachable(from, place_at, carry, obstacles);
  }

 private:
  WorldSpec world_;
  std::vector<Segment> walls_;
  double step_ = 0.0;
  int nx_ = 0;
  int jmin_ = 0;
  int rows_ = 0;
};

/// Brute-force monotone solvability: try every object ordering, motion
/// planning each start->goal move directly. No trees, no constraints, no
/// memoization.
inline bool monotone_solvable_oracle(const Instance& instance, const MotionPlanner& planner) {
  std::vector<int> moving;
  for (int o = 0; o < instance.object_count(); ++o)
    if (!same_position(instance.start[o], instance.goal[o])) moving.push_back(o);
  std::vector<int> order = moving;
  std::sort(order.begin(), order.end());
  do {
    Arrangement current = instance.start;
    bool ok = true;
    for (int o : order) {
      if (!placement_free(current, o, instance.goal[o], instance.world)) {
        ok = false;
        break;
      }
      MotionStats stats;
      if (!planner.plan_pick_and_place({current, o, instance.goal[o]}, stats)) {
        ok = false;
        break;
      }
      current.positions[o] = instance.goal[o];
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return moving.empty();
}

/// Exhaustive search over plans with at most one buffer move: which object,
/// which grid cell, and where the two halves of its round trip sit in the
/// goal-move order. Every step is motion-planned directly.
inline bool one_buffer_solvable_oracle(const Instance& instance, const MotionPlanner& planner,
                                       const PositionGrid& grid) {
  if (monotone_solvable_oracle(instance, planner)) return true;
  std::vector<int> moving;
  for (int o = 0; o < instance.object_count(); ++o)
    if (!same_position(instance.start[o], instance.goal[o])) moving.push_back(o);

  auto try_sequence = [&](const std::vector<std::pair<int, Point2>>& steps) {
    Arrangement current = instance.start;
    for (const auto& [o, target] : steps) {
      if (same_position(current[o], target)) return false;
      if (!placement_free(current, o, target, instance.world)) return false;
      MotionStats stats;
      if (!planner.plan_pick_and_place({current, o, target}, stats)) return false;
      current.positions[o] = target;
    }
    return current == instance.goal;
  };

  for (int buffered : moving) {
    std::vector<int> others;
    for (int o : moving)
      if (o != buffered) others.push_back(o);
    std::vector<int> order = others;
    std::sort(order.begin(), order.end());
    do {
      const int m = static_cast<int>(order.size());
      for (int buf_pos = 0; buf_pos <= m; ++buf_pos)
        for (int goal_pos = buf_pos; goal_pos <= m; ++goal_pos)
          for (const Point2& cell : grid.positions) {
            if (same_position(cell, instance.goal[buffered])) continue;
            std::vector<std::pair<int, Point2>> steps;
            for (int i = 0; i <= m; ++i) {
              if (i == buf_pos) steps.emplace_back(buffered, cell);
              if (i == goal_pos) steps.emplace_back(buffered, instance.goal[buffered]);
              if (i < m) steps.emplace_back(order[i], instance.goal[order[i]]);
            }
            if (try_sequence(steps)) return true;
          }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return false;
}

/// All collision-valid "subset at goal" arrangements of an instance,
/// reachable or not. Constraint soundness must hold on every one of them.
inline std::vector<Arrangement> goal_subset_arrangements(const Instance& instance) {
  std::vector<Arrangement> out;
  const int n = instance.object_count();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Arrangement a = instance.start;
    for (int o = 0; o < n; ++o)
      if (mask & (1u << o)) a.positions[o] = instance.goal[o];
    bool valid = true;
    for (int i = 0; i < n && valid; ++i)
      for (int j = i + 1; j < n && valid; ++j)
        if (disc_disc_intersect({a[i], instance.world.object_radius},
                                {a[j], instance.world.object_radius}))
          valid = false;
    if (valid) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace shelfplan::testing
