#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <vector>

namespace d2ca {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point2D&, const Point2D&) = default;
  friend constexpr auto operator<=>(const Point2D&, const Point2D&) = default;
};

/// Absolute tolerance applied to orientation and in-circle determinants.
inline constexpr double kPredicateEps = 1e-12;
/// Two input points closer than this on both axes are the same point.
inline constexpr double kDuplicateEps = 1e-9;

inline bool is_finite(const Point2D& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double dist2(const Point2D& a, const Point2D& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(const Point2D& a, const Point2D& b) { return std::sqrt(dist2(a, b)); }

/// Twice the signed area of (a, b, c); positive when counter-clockwise.
inline double cross(const Point2D& a, const Point2D& b, const Point2D& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// +1 counter-clockwise, -1 clockwise, 0 collinear within kPredicateEps.
inline int orientation(const Point2D& a, const Point2D& b, const Point2D& c) {
  const double d = cross(a, b, c);
  if (d > kPredicateEps) return 1;
  if (d < -kPredicateEps) return -1;
  return 0;
}

/// In-circle determinant for counter-clockwise (a, b, c): positive when d lies
/// strictly inside the circumcircle.
inline double incircle(const Point2D& a, const Point2D& b, const Point2D& c, const Point2D& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad = adx * adx + ady * ady;
  const double bd = bdx * bdx + bdy * bdy;
  const double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

inline bool near_equal(const Point2D& a, const Point2D& b, double eps = kDuplicateEps) {
  return std::abs(a.x - b.x) <= eps && std::abs(a.y - b.y) <= eps;
}

/// Lexicographically sorted copy with near-duplicates removed.
inline std::vector<Point2D> unique_points(std::span<const Point2D> pts) {
  std::vector<Point2D> out(pts.begin(), pts.end());
  std::sort(out.begin(), out.end());
  std::vector<Point2D> kept;
  kept.reserve(out.size());
  for (const auto& p : out) {
    // a near-duplicate may sit a few entries back when x ties within eps but y differs
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend() && p.x - it->x <= kDuplicateEps; ++it) {
      if (near_equal(p, *it)) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(p);
  }
  return kept;
}

inline Point2D mean_of(std::span<const Point2D> pts) {
  double sx = 0.0, sy = 0.0;
  for (const auto& p : pts) {
    sx += p.x;
    sy += p.y;
  }
  const auto n = static_cast<double>(pts.size());
  return {sx / n, sy / n};
}

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  bool intersects(const BoundingBox& o) const {
    return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
  }
  bool contains(const Point2D& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  Point2D center() const { return {0.5 * (min_x + max_x), 0.5 * (min_y + max_y)}; }
};

inline BoundingBox bounding_box(std::span<const Point2D> pts) {
  BoundingBox b{pts.front().x, pts.front().y, pts.front().x, pts.front().y};
  for (const auto& p : pts) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

}  // namespace d2ca
