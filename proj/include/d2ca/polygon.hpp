#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "d2ca/error.hpp"
#include "d2ca/point.hpp"

namespace d2ca {

/// Simple polygon stored as an implicitly closed counter-clockwise ring.
struct Polygon {
  std::vector<Point2D> vertices;

  std::size_t size() const { return vertices.size(); }
  const Point2D& operator[](std::size_t i) const { return vertices[i]; }
  const Point2D& next(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// Rotates a ring so it starts at its lexicographically smallest vertex.
inline void canonicalize_ring(std::vector<Point2D>& ring) {
  if (ring.empty()) return;
  const auto it = std::min_element(ring.begin(), ring.end());
  std::rotate(ring.begin(), it, ring.end());
}

inline double signed_area(std::span<const Point2D> ring) {
  double s = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

inline double polygon_area(const Polygon& poly) { return std::abs(signed_area(poly.vertices)); }

inline BoundingBox bounding_box(const Polygon& poly) { return bounding_box(std::span<const Point2D>(poly.vertices)); }

/// True when p lies on the closed segment [a, b].
inline bool on_segment(const Point2D& a, const Point2D& b, const Point2D& p) {
  if (orientation(a, b, p) != 0) return false;
  return std::min(a.x, b.x) - kPredicateEps <= p.x && p.x <= std::max(a.x, b.x) + kPredicateEps &&
         std::min(a.y, b.y) - kPredicateEps <= p.y && p.y <= std::max(a.y, b.y) + kPredicateEps;
}

/// Closed-segment intersection; shared endpoints and collinear overlap count.
inline bool segments_intersect(const Point2D& p1, const Point2D& p2, const Point2D& q1, const Point2D& q2) {
  if (std::max(p1.x, p2.x) < std::min(q1.x, q2.x) || std::max(q1.x, q2.x) < std::min(p1.x, p2.x) ||
      std::max(p1.y, p2.y) < std::min(q1.y, q2.y) || std::max(q1.y, q2.y) < std::min(p1.y, p2.y))
    return false;
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

/// Boundary-inclusive point-in-polygon by ray casting.
inline bool polygon_contains_point(const Polygon& poly, const Point2D& p) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2D& a = v[j];
    const Point2D& b = v[i];
    if (on_segment(a, b, p)) return true;
    if ((b.y > p.y) != (a.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

/// Crossing, touching, or containment of either polygon in the other.
inline bool polygons_overlap(const Polygon& a, const Polygon& b) {
  if (!bounding_box(a).intersects(bounding_box(b))) return false;
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < na; ++i) {
    const Point2D& a1 = a[i];
    const Point2D& a2 = a.next(i);
    for (std::size_t j = 0; j < nb; ++j)
      if (segments_intersect(a1, a2, b[j], b.next(j))) return true;
  }
  // no boundary contact: overlap iff one ring lies wholly inside the other
  return polygon_contains_point(b, a[0]) || polygon_contains_point(a, b[0]);
}

/// Euclidean distance from p to the closed segment [a, b].
inline double point_segment_distance(const Point2D& p, const Point2D& a, const Point2D& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, {a.x + t * vx, a.y + t * vy});
}

inline double distance_to_boundary(const Polygon& poly, const Point2D& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) best = std::min(best, point_segment_distance(p, poly[i], poly.next(i)));
  return best;
}

/// No two non-adjacent edges intersect and adjacent edges share only their
/// common vertex. Quadratic; meant for checks and tests.
inline bool is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (near_equal(poly[i], poly.next(i))) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // adjacent edges may only touch at the shared vertex: reject folding back
        const std::size_t shared = (j == i + 1) ? j : i;
        const Point2D& s = poly[shared];
        const Point2D& before = poly[(shared + n - 1) % n];
        const Point2D& after = poly.next(shared);
        if (orientation(before, s, after) == 0 &&
            ((after.x - s.x) * (before.x - s.x) + (after.y - s.y) * (before.y - s.y)) > 0)
          return false;
        continue;
      }
      if (segments_intersect(poly[i], poly.next(i), poly[j], poly.next(j))) return false;
    }
  }
  return true;
}

/// Convex hull by monotone chain; counter-clockwise, collinear points dropped,
/// starting at the lexicographically smallest vertex.
inline Polygon convex_hull(std::span<const Point2D> points) {
  auto pts = unique_points(points);
  if (pts.size() < 3) throw DegenerateInput("convex_hull: fewer than 3 distinct points");
  std::vector<Point2D> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orientation(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= t && orientation(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  if (h.size() < 3) throw DegenerateInput("convex_hull: points are collinear");
  return Polygon{std::move(h)};
}

}  // namespace d2ca
