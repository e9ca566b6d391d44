#include "shelfplan/world.hpp"

#include <algorithm>
#include <cstring>
#include <random>
#include <stdexcept>

#include "shelfplan/errors.hpp"

namespace shelfplan {

void WorldSpec::validate() const {
  if (!(workspace.min.x <= workspace.max.x && workspace.min.y <= workspace.max.y))
    throw std::invalid_argument("workspace rect has min > max");
  if (!(object_radius > 0)) throw std::invalid_argument("object_radius must be > 0");
  if (!(gripper_radius > 0)) throw std::invalid_argument("gripper_radius must be > 0");
  if (!(wrist_length >= 0)) throw std::invalid_argument("wrist_length must be >= 0");
  if (!(grid_resolution > 0)) throw std::invalid_argument("grid_resolution must be > 0");
  if (grasp_count < 1) throw std::invalid_argument("grasp_count must be >= 1");
}

WorldSpec default_world() {
  WorldSpec w;
  w.workspace = {{0.0, 0.0}, {10.0, 8.0}};
  w.object_radius = 0.5;
  w.gripper_radius = 0.4;
  w.wrist_length = 8.0;
  w.grid_resolution = 2.0;
  w.grasp_count = 3;
  return w;
}

std::vector<Segment> workspace_walls(const WorldSpec& world) {
  const Rect& r = world.workspace;
  return {
      {{r.min.x, r.min.y}, {r.min.x, r.max.y}},  // left
      {{r.min.x, r.max.y}, {r.max.x, r.max.y}},  // back
      {{r.max.x, r.min.y}, {r.max.x, r.max.y}},  // right
  };
}

Point2 staging_point(const WorldSpec& world) {
  const Rect& r = world.workspace;
  return {0.5 * (r.min.x + r.max.x), r.min.y - 2.0 * world.gripper_radius};
}

int PositionGrid::index_of(Point2 p) const {
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (same_position(positions[i], p)) return static_cast<int>(i);
  return -1;
}

namespace {

// Centered 1-D lattice of `count` points inset by `r` on both ends.
std::vector<double> axis_lattice(double lo, double hi, double r, double step) {
  const double usable = (hi - lo) - 2.0 * r;
  if (usable < 0) return {};
  const int count = static_cast<int>(usable / step) + 1;
  const double margin = (usable - (count - 1) * step) / 2.0;
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(lo + r + margin + i * step);
  return out;
}

}  // namespace

PositionGrid build_grid(const WorldSpec& world) {
  world.validate();
  const Rect& r = world.workspace;
  const auto xs = axis_lattice(r.min.x, r.max.x, world.object_radius, world.grid_resolution);
  const auto ys = axis_lattice(r.min.y, r.max.y, world.object_radius, world.grid_resolution);
  if (xs.empty() || ys.empty())
    throw EmptyGridError("no candidate position fits an object disc in the workspace");
  PositionGrid grid;
  grid.resolution = world.grid_resolution;
  grid.positions.reserve(xs.size() * ys.size());
  for (double y : ys)
    for (double x : xs) grid.positions.push_back({x, y});
  return grid;
}

bool Arrangement::operator==(const Arrangement& other) const {
  if (positions.size() != other.positions.size()) return false;
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (!same_position(positions[i], other.positions[i])) return false;
  return true;
}

std::size_t ArrangementHash::operator()(const Arrangement& a) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    h ^= bits;
    h *= 0x100000001b3ULL;
  };
  for (const Point2& p : a.positions) {
    mix(p.x);
    mix(p.y);
  }
  return h;
}

int Instance::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < object_names.size(); ++i)
    if (object_names[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

bool arrangement_valid(const Arrangement& a, const WorldSpec& world) {
  const double r = world.object_radius;
  for (int i = 0; i < a.size(); ++i) {
    if (!disc_in_rect({a[i], r}, world.workspace)) return false;
    for (int j = i + 1; j < a.size(); ++j)
      if (disc_disc_intersect({a[i], r}, {a[j], r})) return false;
  }
  return true;
}

}  // namespace

void Instance::validate() const {
  world.validate();
  if (start.size() != object_count() || goal.size() != object_count())
    throw std::invalid_argument("start/goal arity does not match object list");
  if (!arrangement_valid(start, world))
    throw std::invalid_argument("start arrangement violates clearance or workspace bounds");
  if (!arrangement_valid(goal, world))
    throw std::invalid_argument("goal arrangement violates clearance or workspace bounds");
}

Instance sample_instance(const WorldSpec& world, int n, std::uint64_t rng_seed) {
  world.validate();
  const PositionGrid grid = build_grid(world);
  if (n < 1 || n > static_cast<int>(grid.positions.size()))
    throw std::invalid_argument("n must be in [1, |grid|]");

  std::mt19937_64 rng(rng_seed);
  const Rect& r = world.workspace;
  const double rad = world.object_radius;
  std::uniform_real_distribution<double> ux(r.min.x + rad, r.max.x - rad);
  std::uniform_real_distribution<double> uy(r.min.y + rad, r.max.y - rad);

  constexpr int kMaxRejections = 10000;

  Instance inst;
  inst.world = world;
  for (int i = 0; i < n; ++i) inst.object_names.push_back("o" + std::to_string(i + 1));

  // Starts: continuous rejection sampling with pairwise clearance 2r.
  inst.start.positions.reserve(n);
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
      const Point2 p{ux(rng), uy(rng)};
      bool clear = true;
      for (const Point2& q : inst.start.positions)
        if (disc_disc_intersect({p, rad}, {q, rad})) {
          clear = false;
          break;
        }
      if (clear) {
        inst.start.positions.push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed)
      throw SamplingExhaustedError("could not place start " + std::to_string(i + 1) +
                                   " after 10^4 rejection rounds");
  }

  // Goals: uniform n-subset of the grid, uniform bijection to objects.
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kMaxRejections)
      throw SamplingExhaustedError("could not sample a collision-free goal subset");
    std::vector<int> cells(grid.positions.size());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
    std::vector<int> chosen;
    std::sample(cells.begin(), cells.end(), std::back_inserter(chosen), n, rng);
    std::shuffle(chosen.begin(), chosen.end(), rng);
    Arrangement goal;
    for (int c : chosen) goal.positions.push_back(grid.positions[c]);
    if (arrangement_valid(goal, world)) {
      inst.goal = goal;
      break;
    }
  }

  return inst;
}

bool placement_free(const Arrangement& a, int object, Point2 p, const WorldSpec& world) {
  const double r = world.object_radius;
  if (!disc_in_rect({p, r}, world.workspace)) return false;
  for (int j = 0; j < a.size(); ++j) {
    if (j == object) continue;
    if (disc_disc_intersect({p, r}, {a[j], r})) return false;
  }
  return true;
}

Arrangement apply_move(const Arrangement& a, int object, Point2 p, const WorldSpec& world) {
  if (object < 0 || object >= a.size()) throw std::invalid_argument("object index out of range");
  if (!disc_in_rect({p, world.object_radius}, world.workspace))
    throw OutOfWorkspaceError("target placement leaves the workspace");
  for (int j = 0; j < a.size(); ++j) {
    if (j == object) continue;
    if (disc_disc_intersect({p, world.object_radius}, {a[j], world.object_radius}))
      throw PlacementCollisionError("target placement collides with object " +
                                    std::to_string(j));
  }
  Arrangement out = a;
  out.positions[object] = p;
  return out;
}

}  // namespace shelfplan
