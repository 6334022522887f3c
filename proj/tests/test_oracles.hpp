#pragma once

// Brute-force reference checks used by the test suites. Written independently
// of the library predicates: winding numbers instead of ray casting,
// circumcenter distances instead of in-circle determinants.

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "d2ca/delaunay.hpp"
#include "d2ca/polygon.hpp"

namespace oracle {

using d2ca::Point2D;

inline double turn(const Point2D& a, const Point2D& b, const Point2D& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline double shoelace(const std::vector<Point2D>& ring) {
  double s = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % ring.size()];
    s += (a.x - b.x) * (a.y + b.y);
  }
  return 0.5 * s;
}

inline double seg_dist(const Point2D& p, const Point2D& a, const Point2D& b) {
  const double L = std::hypot(b.x - a.x, b.y - a.y);
  if (L == 0) return std::hypot(p.x - a.x, p.y - a.y);
  double t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (L * L);
  t = std::max(0.0, std::min(1.0, t));
  return std::hypot(p.x - (a.x + t * (b.x - a.x)), p.y - (a.y + t * (b.y - a.y)));
}

/// Winding-number containment; points within 1e-9 of an edge count as inside.
inline bool contains(const std::vector<Point2D>& ring, const Point2D& p) {
  int wn = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % ring.size()];
    if (seg_dist(p, a, b) <= 1e-9) return true;
    if (a.y <= p.y) {
      if (b.y > p.y && turn(a, b, p) > 0) ++wn;
    } else if (b.y <= p.y && turn(a, b, p) < 0) {
      --wn;
    }
  }
  return wn != 0;
}

/// Closed segments intersect, by parametric solve plus collinear overlap.
inline bool segs_meet(const Point2D& p, const Point2D& p2, const Point2D& q, const Point2D& q2) {
  const double rx = p2.x - p.x, ry = p2.y - p.y;
  const double sx = q2.x - q.x, sy = q2.y - q.y;
  const double den = rx * sy - ry * sx;
  const double qpx = q.x - p.x, qpy = q.y - p.y;
  if (std::abs(den) < 1e-15) {
    if (std::abs(qpx * ry - qpy * rx) > 1e-12) return false;
    return seg_dist(q, p, p2) <= 1e-12 || seg_dist(q2, p, p2) <= 1e-12 || seg_dist(p, q, q2) <= 1e-12 ||
           seg_dist(p2, q, q2) <= 1e-12;
  }
  const double t = (qpx * sy - qpy * sx) / den;
  const double u = (qpx * ry - qpy * rx) / den;
  return t >= -1e-12 && t <= 1 + 1e-12 && u >= -1e-12 && u <= 1 + 1e-12;
}

inline bool overlap(const std::vector<Point2D>& a, const std::vector<Point2D>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (segs_meet(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) return true;
  for (const auto& v : a)
    if (contains(b, v)) return true;
  for (const auto& v : b)
    if (contains(a, v)) return true;
  return false;
}

/// Non-adjacent edges never meet; adjacent ones share exactly one vertex.
inline bool simple(const std::vector<Point2D>& r) {
  const std::size_t n = r.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i] == r[(i + 1) % n]) return false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segs_meet(r[i], r[(i + 1) % n], r[j], r[(j + 1) % n])) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (r[i] == r[j]) return false;
  return true;
}

/// Counts (triangle, vertex) pairs where the vertex sits strictly inside the
/// triangle's circumcircle, with a relative tolerance for co-circular ties.
inline int circumcircle_violations(const d2ca::Triangulation& t) {
  int bad = 0;
  for (std::size_t i = 0; i < t.triangle_count(); ++i) {
    auto [ia, ib, ic] = t.triangle(i);
    const auto &a = t.vertices[ia], &b = t.vertices[ib], &c = t.vertices[ic];
    const double d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    const double ux = ((a.x * a.x + a.y * a.y) * (b.y - c.y) + (b.x * b.x + b.y * b.y) * (c.y - a.y) +
                       (c.x * c.x + c.y * c.y) * (a.y - b.y)) /
                      d;
    const double uy = ((a.x * a.x + a.y * a.y) * (c.x - b.x) + (b.x * b.x + b.y * b.y) * (a.x - c.x) +
                       (c.x * c.x + c.y * c.y) * (b.x - a.x)) /
                      d;
    const double r = std::hypot(a.x - ux, a.y - uy);
    for (std::size_t v = 0; v < t.vertices.size(); ++v) {
      if (static_cast<int>(v) == ia || static_cast<int>(v) == ib || static_cast<int>(v) == ic) continue;
      if (std::hypot(t.vertices[v].x - ux, t.vertices[v].y - uy) < r * (1 - 1e-9)) ++bad;
    }
  }
  return bad;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<Point2D> random_box(std::mt19937_64& rng, int n, double x0, double y0, double x1, double y1) {
  std::vector<Point2D> out;
  for (int i = 0; i < n; ++i) out.push_back({uniform(rng, x0, x1), uniform(rng, y0, y1)});
  return out;
}

inline std::vector<Point2D> random_disc(std::mt19937_64& rng, int n, Point2D c, double r) {
  std::vector<Point2D> out;
  for (int i = 0; i < n; ++i) {
    const double rr = r * std::sqrt(uniform(rng, 0, 1));
    const double a = uniform(rng, 0, 2 * std::numbers::pi);
    out.push_back({c.x + rr * std::cos(a), c.y + rr * std::sin(a)});
  }
  return out;
}

/// Annulus 0.8..1.0 around the origin with a 90 degree opening to the east.
inline std::vector<Point2D> c_shape(std::mt19937_64& rng, int n) {
  std::vector<Point2D> out;
  for (int i = 0; i < n; ++i) {
    const double a = uniform(rng, std::numbers::pi / 4, 7 * std::numbers::pi / 4);
    const double r = uniform(rng, 0.8, 1.0);
    out.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return out;
}

/// Star-shaped simple polygon, counter-clockwise.
inline d2ca::Polygon random_star_polygon(std::mt19937_64& rng, Point2D c, double rmin, double rmax, int n) {
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back(uniform(rng, 0, 2 * std::numbers::pi));
  std::sort(angles.begin(), angles.end());
  d2ca::Polygon p;
  for (double a : angles) {
    const double r = uniform(rng, rmin, rmax);
    p.vertices.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  if (n < 3 || shoelace(p.vertices) <= 0 || !simple(p.vertices)) {
    // an angular gap wider than pi can fold the ring; fall back to a regular polygon
    p.vertices.clear();
    for (int i = 0; i < std::max(n, 3); ++i) {
      const double a = 2 * std::numbers::pi * i / std::max(n, 3);
      p.vertices.push_back({c.x + rmax * std::cos(a), c.y + rmax * std::sin(a)});
    }
  }
  return p;
}

}  // namespace oracle
