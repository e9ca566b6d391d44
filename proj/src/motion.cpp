#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <tuple>

#include "shelfplan/errors.hpp"
#include "shelfplan/manipulation.hpp"

namespace shelfplan {

MotionPlanner::MotionPlanner(const WorldSpec& world, PlannerConfig config)
    : world_(world), config_(config), walls_(workspace_walls(world)) {
  world_.validate();
  if (config_.grid_factor < 1) config_.grid_factor = 1;
  step_ = world_.grid_resolution / config_.grid_factor;
  const Rect& r = world_.workspace;
  nx_ = static_cast<int>((r.max.x - r.min.x) / step_) + 1;
  // Lattice rows extend below the open side far enough to cover the staging
  // point plus one step of slack.
  const double depth = 2.0 * world_.gripper_radius + 2.0 * step_;
  jmin_ = -static_cast<int>(std::ceil(depth / step_));
  jmax_ = static_cast<int>((r.max.y - r.min.y) / step_);
  region_ymin_ = r.min.y + jmin_ * step_;

  if (config_.kind == PlannerKind::Roadmap) {
    std::mt19937_64 rng(config_.roadmap_seed);
    std::uniform_real_distribution<double> ux(r.min.x, r.max.x);
    std::uniform_real_distribution<double> uy(region_ymin_, r.max.y);
    samples_.reserve(config_.roadmap_samples);
    for (int i = 0; i < config_.roadmap_samples; ++i) samples_.push_back({ux(rng), uy(rng)});
    const double area = (r.max.x - r.min.x) * (r.max.y - region_ymin_);
    link_radius_ = std::max(2.5 * std::sqrt(area / std::max(1, config_.roadmap_samples)),
                            2.0 * step_);
    sample_links_.resize(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i)
      for (std::size_t j = i + 1; j < samples_.size(); ++j)
        if (distance(samples_[i], samples_[j]) <= link_radius_) {
          sample_links_[i].push_back(static_cast<int>(j));
          sample_links_[j].push_back(static_cast<int>(i));
        }
  }
}

bool MotionPlanner::sweep_free(Point2 a, Point2 b, double radius,
                               std::span<const Disc> obstacles, MotionStats& stats) const {
  const Capsule sweep{a, b, radius};
  for (const Disc& d : obstacles) {
    ++stats.collision_checks;
    if (capsule_disc_intersect(sweep, d)) return false;
  }
  for (const Segment& wall : walls_) {
    ++stats.collision_checks;
    if (capsule_segment_intersect(sweep, wall)) return false;
  }
  return true;
}

namespace {

// Min-heap entries ordered by (f, g, id); the id breaks ties so expansions
// are deterministic.
using HeapEntry = std::tuple<double, double, int>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>>;

std::vector<Point2> rebuild(const std::vector<int>& parent, int goal_id,
                            const std::vector<Point2>& coords) {
  std::vector<Point2> path;
  for (int v = goal_id; v != -1; v = parent[v]) path.push_back(coords[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::vector<Point2>> astar(int source, int target,
                                         const std::vector<Point2>& coords,
                                         const std::function<void(int, std::vector<int>&)>& neighbors,
                                         const std::function<bool(int, int)>& edge_free) {
  const int n = static_cast<int>(coords.size());
  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  std::vector<char> closed(n, 0);
  MinHeap open;
  g[source] = 0.0;
  open.push({distance(coords[source], coords[target]), 0.0, source});
  std::vector<int> nbrs;
  while (!open.empty()) {
    const auto [f, gv, u] = open.top();
    open.pop();
    if (closed[u]) continue;
    closed[u] = 1;
    if (u == target) return rebuild(parent, target, coords);
    nbrs.clear();
    neighbors(u, nbrs);
    for (int v : nbrs) {
      if (closed[v]) continue;
      const double cand = g[u] + distance(coords[u], coords[v]);
      if (cand < g[v] && edge_free(u, v)) {
        g[v] = cand;
        parent[v] = u;
        open.push({cand + distance(coords[v], coords[target]), cand, v});
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Point2>> MotionPlanner::grid_plan(Point2 from, Point2 to, double radius,
                                                            std::span<const Disc> obstacles,
                                                            MotionStats& stats) const {
  if (sweep_free(from, to, radius, obstacles, stats)) return std::vector<Point2>{from, to};

  const Rect& r = world_.workspace;
  const int rows = jmax_ - jmin_ + 1;
  const int lattice_count = nx_ * rows;
  std::vector<Point2> coords(lattice_count + 2);
  for (int row = 0; row < rows; ++row)
    for (int i = 0; i < nx_; ++i)
      coords[row * nx_ + i] = {r.min.x + i * step_, r.min.y + (jmin_ + row) * step_};
  const int src = lattice_count;
  const int dst = lattice_count + 1;
  coords[src] = from;
  coords[dst] = to;

  // Lattice cells adjacent to an off-lattice endpoint.
  auto endpoint_links = [&](Point2 p, std::vector<int>& out) {
    const double link = 1.55 * step_;
    const int i_lo = std::max(0, static_cast<int>(std::floor((p.x - link - r.min.x) / step_)));
    const int i_hi = std::min(nx_ - 1, static_cast<int>(std::ceil((p.x + link - r.min.x) / step_)));
    const int row_lo =
        std::max(0, static_cast<int>(std::floor((p.y - link - r.min.y) / step_)) - jmin_);
    const int row_hi =
        std::min(rows - 1, static_cast<int>(std::ceil((p.y + link - r.min.y) / step_)) - jmin_);
    for (int row = row_lo; row <= row_hi; ++row)
      for (int i = i_lo; i <= i_hi; ++i) {
        const int id = row * nx_ + i;
        if (distance(coords[id], p) <= link) out.push_back(id);
      }
  };
  std::vector<int> src_links, dst_links;
  endpoint_links(from, src_links);
  endpoint_links(to, dst_links);
  std::vector<char> near_dst(lattice_count, 0);
  for (int id : dst_links) near_dst[id] = 1;

  auto neighbors = [&](int u, std::vector<int>& out) {
    if (u == src) {
      out = src_links;
      return;
    }
    if (u == dst) return;
    const int row = u / nx_;
    const int i = u % nx_;
    for (int dr = -1; dr <= 1; ++dr)
      for (int di = -1; di <= 1; ++di) {
        if (dr == 0 && di == 0) continue;
        const int nrow = row + dr;
        const int ni = i + di;
        if (nrow < 0 || nrow >= rows || ni < 0 || ni >= nx_) continue;
        out.push_back(nrow * nx_ + ni);
      }
    if (near_dst[u]) out.push_back(dst);
  };
  auto edge_free = [&](int u, int v) {
    return sweep_free(coords[u], coords[v], radius, obstacles, stats);
  };
  return astar(src, dst, coords, neighbors, edge_free);
}

std::optional<std::vector<Point2>> MotionPlanner::roadmap_plan(Point2 from, Point2 to,
                                                               double radius,
                                                               std::span<const Disc> obstacles,
                                                               MotionStats& stats) const {
  if (sweep_free(from, to, radius, obstacles, stats)) return std::vector<Point2>{from, to};

  const int n = static_cast<int>(samples_.size());
  std::vector<Point2> coords = samples_;
  coords.push_back(from);
  coords.push_back(to);
  const int src = n;
  const int dst = n + 1;
  std::vector<int> src_links, dst_links;
  for (int i = 0; i < n; ++i) {
    if (distance(samples_[i], from) <= link_radius_) src_links.push_back(i);
    if (distance(samples_[i], to) <= link_radius_) dst_links.push_back(i);
  }
  std::vector<char> near_dst(n, 0);
  for (int id : dst_links) near_dst[id] = 1;

  auto neighbors = [&](int u, std::vector<int>& out) {
    if (u == src) {
      out = src_links;
      return;
    }
    if (u == dst) return;
    out = sample_links_[u];
    if (near_dst[u]) out.push_back(dst);
  };
  auto edge_free = [&](int u, int v) {
    return sweep_free(coords[u], coords[v], radius, obstacles, stats);
  };
  return astar(src, dst, coords, neighbors, edge_free);
}

std::optional<std::vector<Point2>> MotionPlanner::plan_path(Point2 from, Point2 to, double radius,
                                                            std::span<const Disc> obstacles,
                                                            MotionStats& stats) const {
  if (config_.kind == PlannerKind::Roadmap) return roadmap_plan(from, to, radius, obstacles, stats);
  return grid_plan(from, to, radius, obstacles, stats);
}

namespace {

bool grasp_usable(const GraspPose& grasp, const WorldSpec& world,
                  std::span<const Disc> obstacles, MotionStats& stats) {
  if (footprint_hits_walls(grasp, world)) return false;
  for (const Disc& d : obstacles) {
    ++stats.collision_checks;
    if (disc_disc_intersect(grasp.gripper, d) || capsule_disc_intersect(grasp.wrist, d))
      return false;
  }
  return true;
}

}  // namespace

std::optional<PickPlaceResult> MotionPlanner::plan_pick_and_place(const PickPlaceQuery& query,
                                                                  MotionStats& stats) const {
  ++stats.planner_calls;

  std::vector<Disc> obstacles;
  obstacles.reserve(query.arrangement.size());
  for (int j = 0; j < query.arrangement.size(); ++j) {
    if (j == query.object) continue;
    obstacles.push_back({query.arrangement[j], world_.object_radius});
  }

  const Point2 from = query.arrangement[query.object];
  const GraspPose* pick = nullptr;
  const GraspPose* place = nullptr;
  const auto pick_grasps = generate_grasps(world_, from);
  for (const GraspPose& g : pick_grasps)
    if (grasp_usable(g, world_, obstacles, stats)) {
      pick = &g;
      break;
    }
  if (!pick) return std::nullopt;
  const auto place_grasps = generate_grasps(world_, query.place_at);
  for (const GraspPose& g : place_grasps)
    if (grasp_usable(g, world_, obstacles, stats)) {
      place = &g;
      break;
    }
  if (!place) return std::nullopt;

  auto transit_pts = plan_path(staging_point(world_), from, world_.gripper_radius,
                               obstacles, stats);
  if (!transit_pts) return std::nullopt;
  const double carry_radius = std::max(world_.gripper_radius, world_.object_radius);
  auto transfer_pts = plan_path(from, query.place_at, carry_radius, obstacles, stats);
  if (!transfer_pts) return std::nullopt;

  PickPlaceResult out;
  out.transit = {std::move(*transit_pts), -1, PathPhase::Transit};
  out.transfer = {std::move(*transfer_pts), query.object, PathPhase::Transfer};
  out.used_pick = *pick;
  out.used_place = *place;
  return out;
}

std::size_t EdgeVerifier::KeyHash::operator()(const Key& k) const {
  std::size_t h = ArrangementHash{}(k.parent);
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(k.object));
  std::uint64_t bits;
  std::memcpy(&bits, &k.target.x, sizeof(bits));
  mix(bits);
  std::memcpy(&bits, &k.target.y, sizeof(bits));
  mix(bits);
  return h;
}

EdgeVerifier::EdgeVerifier(const MotionPlanner& planner, bool use_cache)
    : planner_(planner), use_cache_(use_cache) {}

const std::optional<PickPlaceResult>& EdgeVerifier::verify(const Arrangement& parent,
                                                           const Arrangement& child) {
  if (parent.size() != child.size())
    throw MalformedEdgeError("edge endpoints have different object counts");
  int object = -1;
  for (int i = 0; i < parent.size(); ++i) {
    if (same_position(parent[i], child[i])) continue;
    if (object != -1) throw MalformedEdgeError("edge endpoints differ in more than one object");
    object = i;
  }
  if (object == -1) throw MalformedEdgeError("edge endpoints are identical");

  const Point2 target = child[object];
  if (use_cache_) {
    Key key{parent, object, target};
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      if (it->second.has_value())
        ++cache_hit_success;
      else
        ++cache_hit_fail;
      return it->second;
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto result = planner_.plan_pick_and_place({parent, object, target}, motion);
    verify_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
    if (result.has_value())
      ++edges_verified;
    else
      ++failed_verifications;
    auto [pos, inserted] = cache_.emplace(std::move(key), std::move(result));
    return pos->second;
  }

  const auto t0 = std::chrono::steady_clock::now();
  uncached_slot_ = planner_.plan_pick_and_place({parent, object, target}, motion);
  verify_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
  if (uncached_slot_.has_value())
    ++edges_verified;
  else
    ++failed_verifications;
  return uncached_slot_;
}

}  // namespace shelfplan
