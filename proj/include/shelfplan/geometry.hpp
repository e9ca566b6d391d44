#pragma once

#include <cmath>

namespace shelfplan {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Exact position identity (bit-level). Arrangements are compared with this,
/// never with a tolerance: positions are copied verbatim from the grid or
/// from an instance's start coordinates, so equal states are bit-equal.
inline bool same_position(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

struct Disc {
  Point2 center;
  double radius = 0.0;
};

/// Swept volume of a disc moved along segment [a,b]; a == b degenerates to a disc.
struct Capsule {
  Point2 a;
  Point2 b;
  double radius = 0.0;
};

struct Rect {
  Point2 min;
  Point2 max;
};

/// Segment of zero thickness, used for workspace walls.
struct Segment {
  Point2 a;
  Point2 b;
};

double point_segment_distance(Point2 p, Point2 a, Point2 b);
double segment_segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1);

/// Collisions are strict: tangency counts as free. This keeps grid-spaced
/// placements (exactly 2*r apart) from flickering between free and blocked.
bool disc_disc_intersect(const Disc& a, const Disc& b);
bool capsule_disc_intersect(const Capsule& c, const Disc& d);
bool capsule_capsule_intersect(const Capsule& a, const Capsule& b);
bool capsule_segment_intersect(const Capsule& c, const Segment& s);

/// True iff the disc lies entirely inside the rect; boundary contact allowed.
bool disc_in_rect(const Disc& d, const Rect& r);

}  // namespace shelfplan
