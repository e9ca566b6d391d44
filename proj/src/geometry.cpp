#include "shelfplan/geometry.hpp"

#include <algorithm>

namespace shelfplan {

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

namespace {

double orient(Point2 a, Point2 b, Point2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool segments_properly_cross(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
  const double d1 = orient(b0, b1, a0);
  const double d2 = orient(b0, b1, a1);
  const double d3 = orient(a0, a1, b0);
  const double d4 = orient(a0, a1, b1);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

double segment_segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
  if (segments_properly_cross(a0, a1, b0, b1)) return 0.0;
  const double d = std::min(
      std::min(point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1)),
      std::min(point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)));
  return d;
}

bool disc_disc_intersect(const Disc& a, const Disc& b) {
  return distance(a.center, b.center) < a.radius + b.radius;
}

bool capsule_disc_intersect(const Capsule& c, const Disc& d) {
  return point_segment_distance(d.center, c.a, c.b) < c.radius + d.radius;
}

bool capsule_capsule_intersect(const Capsule& a, const Capsule& b) {
  return segment_segment_distance(a.a, a.b, b.a, b.b) < a.radius + b.radius;
}

bool capsule_segment_intersect(const Capsule& c, const Segment& s) {
  return segment_segment_distance(c.a, c.b, s.a, s.b) < c.radius;
}

bool disc_in_rect(const Disc& d, const Rect& r) {
  return d.center.x - d.radius >= r.min.x && d.center.x + d.radius <= r.max.x &&
         d.center.y - d.radius >= r.min.y && d.center.y + d.radius <= r.max.y;
}

}  // namespace shelfplan
