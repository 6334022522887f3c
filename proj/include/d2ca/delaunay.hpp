#pragma once

// Delaunay triangulation by radial sweep-hull insertion with edge flipping.
//
// Points are de-duplicated and sorted lexicographically before insertion, so
// the result depends only on the point set, never on input order.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "d2ca/error.hpp"
#include "d2ca/point.hpp"

namespace d2ca {

/// Half-edge triangulation. Triangle t owns half-edges 3t, 3t+1, 3t+2; half-edge
/// h runs from corners[h] to corners[next_halfedge(h)]. Triangles are
/// counter-clockwise. twins[h] is the opposite half-edge, or -1 on the hull.
struct Triangulation {
  std::vector<Point2D> vertices;
  std::vector<int> corners;
  std::vector<int> twins;
  /// Hull vertex ring, counter-clockwise.
  std::vector<int> hull;

  std::size_t triangle_count() const { return corners.size() / 3; }

  std::array<int, 3> triangle(std::size_t t) const {
    return {corners[3 * t], corners[3 * t + 1], corners[3 * t + 2]};
  }

  /// Directed hull edges (from, to), counter-clockwise.
  std::vector<std::pair<int, int>> boundary_edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(hull.size());
    for (std::size_t i = 0; i < hull.size(); ++i) out.emplace_back(hull[i], hull[(i + 1) % hull.size()]);
    return out;
  }
};

inline constexpr int next_halfedge(int h) { return h % 3 == 2 ? h - 2 : h + 1; }
inline constexpr int prev_halfedge(int h) { return h % 3 == 0 ? h + 2 : h - 1; }

namespace detail {

class SweepHullBuilder {
 public:
  explicit SweepHullBuilder(std::vector<Point2D> pts) : p_(std::move(pts)) {}

  Triangulation build() {
    const int n = static_cast<int>(p_.size());
    const auto box = bounding_box(p_);
    const Point2D mid = box.center();

    int i0 = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double d = dist2(mid, p_[i]);
      if (d < best) {
        best = d;
        i0 = i;
      }
    }
    int i1 = -1;
    best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (i == i0) continue;
      const double d = dist2(p_[i0], p_[i]);
      if (d < best) {
        best = d;
        i1 = i;
      }
    }
    int i2 = -1;
    double min_radius = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1) continue;
      if (orientation(p_[i0], p_[i1], p_[i]) == 0) continue;
      const double r = circumradius2(p_[i0], p_[i1], p_[i]);
      if (r < min_radius) {
        min_radius = r;
        i2 = i;
      }
    }
    if (i2 < 0) throw DegenerateInput("delaunay: all points are collinear");
    if (cross(p_[i0], p_[i1], p_[i2]) < 0) std::swap(i1, i2);

    center_ = circumcenter(p_[i0], p_[i1], p_[i2]);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = dist2(p_[i], center_);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    hash_size_ = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    hash_.assign(hash_size_, -1);
    prev_.assign(n, 0);
    next_.assign(n, 0);
    hull_tri_.assign(n, -1);
    corners_.reserve(6 * n);
    twins_.reserve(6 * n);

    next_[i0] = i1;
    prev_[i2] = i1;
    next_[i1] = i2;
    prev_[i0] = i2;
    next_[i2] = i0;
    prev_[i1] = i0;
    hull_start_ = i0;
    add_triangle(i0, i1, i2, -1, -1, -1);
    hull_tri_[i0] = 0;
    hull_tri_[i1] = 1;
    hull_tri_[i2] = 2;
    hash_[hash_key(p_[i0])] = i0;
    hash_[hash_key(p_[i1])] = i1;
    hash_[hash_key(p_[i2])] = i2;

    for (const int i : order) {
      if (i == i0 || i == i1 || i == i2) continue;
      insert(i);
    }

    Triangulation t;
    t.vertices = std::move(p_);
    t.corners = std::move(corners_);
    t.twins = std::move(twins_);
    int e = hull_start_;
    do {
      t.hull.push_back(e);
      e = next_[e];
    } while (e != hull_start_);
    return t;
  }

 private:
  static double circumradius2(const Point2D& a, const Point2D& b, const Point2D& c) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double ex = c.x - a.x, ey = c.y - a.y;
    const double bl = dx * dx + dy * dy;
    const double cl = ex * ex + ey * ey;
    const double den = dx * ey - dy * ex;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    const double k = 0.5 / den;
    const double x = (ey * bl - dy * cl) * k;
    const double y = (dx * cl - ex * bl) * k;
    return x * x + y * y;
  }

  static Point2D circumcenter(const Point2D& a, const Point2D& b, const Point2D& c) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double ex = c.x - a.x, ey = c.y - a.y;
    const double bl = dx * dx + dy * dy;
    const double cl = ex * ex + ey * ey;
    const double k = 0.5 / (dx * ey - dy * ex);
    return {a.x + (ey * bl - dy * cl) * k, a.y + (dx * cl - ex * bl) * k};
  }

  // Monotone in angle around the seed circumcenter, in [0, 1).
  int hash_key(const Point2D& q) const {
    const double dx = q.x - center_.x;
    const double dy = q.y - center_.y;
    const double s = std::abs(dx) + std::abs(dy);
    const double pr = s > 0 ? dx / s : 0.0;
    const double angle = (dy > 0 ? 3.0 - pr : 1.0 + pr) / 4.0;
    const int k = static_cast<int>(std::floor(angle * hash_size_));
    return ((k % hash_size_) + hash_size_) % hash_size_;
  }

  int add_triangle(int a, int b, int c, int ta, int tb, int tc) {
    const int t = static_cast<int>(corners_.size());
    corners_.push_back(a);
    corners_.push_back(b);
    corners_.push_back(c);
    twins_.push_back(-1);
    twins_.push_back(-1);
    twins_.push_back(-1);
    link(t, ta);
    link(t + 1, tb);
    link(t + 2, tc);
    return t;
  }

  void link(int a, int b) {
    twins_[a] = b;
    if (b != -1) twins_[b] = a;
  }

  void insert(int i) {
    const Point2D& q = p_[i];
    const int key = hash_key(q);
    int start = -1;
    for (int j = 0; j < hash_size_; ++j) {
      start = hash_[(key + j) % hash_size_];
      if (start != -1 && start != next_[start]) break;
    }
    start = prev_[start];
    int e = start;
    while (!(cross(p_[e], p_[next_[e]], q) < 0)) {
      e = next_[e];
      if (e == start) {
        e = -1;
        break;
      }
    }
    if (e == -1) {
      // numerically on the current hull; cannot be placed
      ++skipped_;
      return;
    }

    int t = add_triangle(e, i, next_[e], -1, -1, hull_tri_[e]);
    hull_tri_[e] = t;
    hull_tri_[i] = t + 1;
    legalize(t + 2);

    int n = next_[e];
    for (int nq = next_[n]; cross(p_[n], p_[nq], q) < 0; nq = next_[n]) {
      t = add_triangle(n, i, nq, hull_tri_[i], -1, hull_tri_[n]);
      hull_tri_[i] = t + 1;
      legalize(t + 2);
      next_[n] = n;  // removed from hull
      n = nq;
    }
    if (e == start) {
      for (int pq = prev_[e]; cross(p_[pq], p_[e], q) < 0; pq = prev_[e]) {
        t = add_triangle(pq, i, e, -1, hull_tri_[e], hull_tri_[pq]);
        hull_tri_[pq] = t;
        legalize(t + 2);
        next_[e] = e;
        e = pq;
      }
    }

    hull_start_ = e;
    prev_[i] = e;
    next_[e] = i;
    prev_[n] = i;
    next_[i] = n;
    hash_[hash_key(q)] = i;
    hash_[hash_key(p_[e])] = e;
  }

  void legalize(int a) {
    stack_.clear();
    while (true) {
      const int b = twins_[a];
      if (b == -1) {
        if (stack_.empty()) return;
        a = stack_.back();
        stack_.pop_back();
        continue;
      }
      const int al = next_halfedge(a);
      const int ar = prev_halfedge(a);
      const int br = next_halfedge(b);
      const int bl = prev_halfedge(b);
      const int p0 = corners_[ar];
      const int pr = corners_[a];
      const int pl = corners_[al];
      const int p1 = corners_[bl];

      // co-circular quads are left as they are
      if (incircle(p_[pr], p_[pl], p_[p0], p_[p1]) > kPredicateEps) {
        const int hbl = twins_[bl];
        const int har = twins_[ar];
        corners_[a] = p1;
        corners_[b] = p0;
        if (hbl == -1) hull_tri_[p1] = a;
        if (har == -1) hull_tri_[p0] = b;
        link(a, hbl);
        link(b, har);
        link(ar, bl);
        stack_.push_back(br);
      } else {
        if (stack_.empty()) return;
        a = stack_.back();
        stack_.pop_back();
      }
    }
  }

  std::vector<Point2D> p_;
  Point2D center_{};
  int hash_size_ = 1;
  std::vector<int> hash_;
  std::vector<int> prev_, next_, hull_tri_;
  int hull_start_ = 0;
  std::vector<int> corners_, twins_;
  std::vector<int> stack_;
  int skipped_ = 0;
};

}  // namespace detail

/// Delaunay triangulation of the de-duplicated point set.
/// Throws DegenerateInput for fewer than 3 distinct points or collinear input.
inline Triangulation delaunay_triangulate(std::span<const Point2D> points) {
  for (const auto& p : points)
    if (!is_finite(p)) throw DegenerateInput("delaunay: non-finite coordinate");
  auto pts = unique_points(points);
  if (pts.size() < 3) throw DegenerateInput("delaunay: fewer than 3 distinct points");
  return detail::SweepHullBuilder(std::move(pts)).build();
}

}  // namespace d2ca
