#pragma once

// Characteristic shape: a simple, possibly non-convex polygon obtained by
// eroding a Delaunay triangulation from its hull inwards. The longest boundary
// edge above the length threshold is removed first, and only when its
// triangle's third vertex is not yet on the boundary, which keeps the boundary
// a single simple ring that still encloses every input point.

#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "d2ca/delaunay.hpp"
#include "d2ca/error.hpp"
#include "d2ca/polygon.hpp"

namespace d2ca {

inline constexpr double kDefaultLambda = 0.60;

/// Length threshold for a normalized lambda, mapped over the range of edge
/// lengths in the triangulation.
inline double chi_length_threshold(const Triangulation& t, double lambda_norm) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t h = 0; h < t.corners.size(); ++h) {
    const int tw = t.twins[h];
    if (tw != -1 && tw < static_cast<int>(h)) continue;
    const double l = dist(t.vertices[t.corners[h]], t.vertices[t.corners[next_halfedge(static_cast<int>(h))]]);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return lo + lambda_norm * (hi - lo);
}

/// Erodes an existing triangulation and returns the boundary ring.
inline Polygon chi_shape(const Triangulation& tri, double lambda_norm) {
  if (!(lambda_norm >= 0.0 && lambda_norm <= 1.0)) throw Error("chi_shape: lambda_norm must lie in [0, 1]");
  const double threshold = chi_length_threshold(tri, lambda_norm);
  const auto& v = tri.vertices;
  const auto& corners = tri.corners;
  std::vector<int> twins = tri.twins;
  std::vector<char> removed(tri.triangle_count(), 0);
  std::vector<char> on_boundary(v.size(), 0);
  for (int h : tri.hull) on_boundary[h] = 1;

  auto length = [&](int h) { return dist(v[corners[h]], v[corners[next_halfedge(h)]]); };

  std::priority_queue<std::pair<double, int>> heap;
  for (int h = 0; h < static_cast<int>(corners.size()); ++h) {
    if (twins[h] != -1) continue;
    const double l = length(h);
    if (l > threshold) heap.emplace(l, h);
  }

  while (!heap.empty()) {
    const int h = heap.top().second;
    heap.pop();
    if (removed[h / 3]) continue;
    const int apex = corners[prev_halfedge(h)];
    // once on the boundary a vertex stays there, so this edge is final
    if (on_boundary[apex]) continue;
    removed[h / 3] = 1;
    on_boundary[apex] = 1;
    for (const int side : {next_halfedge(h), prev_halfedge(h)}) {
      const int o = twins[side];
      twins[o] = -1;
      const double l = length(o);
      if (l > threshold) heap.emplace(l, o);
    }
  }

  std::vector<int> outgoing(v.size(), -1);
  int first = -1;
  for (int h = 0; h < static_cast<int>(corners.size()); ++h) {
    if (removed[h / 3] || twins[h] != -1) continue;
    outgoing[corners[h]] = h;
    if (first == -1 || corners[h] < first) first = corners[h];
  }

  Polygon poly;
  int cur = first;
  do {
    poly.vertices.push_back(v[cur]);
    cur = corners[next_halfedge(outgoing[cur])];
  } while (cur != first && poly.vertices.size() <= v.size());
  // vertices are lexicographically sorted, so the ring already starts at its minimum
  return poly;
}

/// Characteristic shape of a point set. Throws DegenerateInput when the points
/// cannot be triangulated.
inline Polygon chi_shape(std::span<const Point2D> points, double lambda_norm) {
  if (!(lambda_norm >= 0.0 && lambda_norm <= 1.0)) throw Error("chi_shape: lambda_norm must lie in [0, 1]");
  return chi_shape(delaunay_triangulate(points), lambda_norm);
}

}  // namespace d2ca
