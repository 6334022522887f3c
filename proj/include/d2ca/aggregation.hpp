#pragma once

// Tree-structured aggregation of cluster contours. Leaves are grouped into
// blocks of at most D nodes; each group elects a leader, the other members
// send it their summaries, and the leader merges overlapping contours. The
// leaders form the next level, until a single root holds the global clusters.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "d2ca/chi_shape.hpp"
#include "d2ca/error.hpp"
#include "d2ca/parallel.hpp"
#include "d2ca/polygon.hpp"

namespace d2ca {

/// The unit exchanged between nodes: a cluster's contour (or, for clusters too
/// small or thin to triangulate, its raw points) plus size and centroid.
struct ClusterSummary {
  Polygon contour;
  std::vector<Point2D> raw_points;
  std::size_t point_count = 0;
  Point2D centroid;
  int origin_node = 0;

  bool degenerate() const { return contour.vertices.empty(); }
  /// Number of coordinates this summary costs to transmit.
  std::size_t vertex_count() const { return degenerate() ? raw_points.size() : contour.size(); }
  std::span<const Point2D> shape_points() const {
    return degenerate() ? std::span<const Point2D>(raw_points) : std::span<const Point2D>(contour.vertices);
  }

  friend bool operator==(const ClusterSummary&, const ClusterSummary&) = default;
};

/// Total order used to make merge results independent of input order.
inline bool summary_less(const ClusterSummary& a, const ClusterSummary& b) {
  if (a.centroid != b.centroid) return a.centroid < b.centroid;
  if (a.point_count != b.point_count) return a.point_count < b.point_count;
  if (a.origin_node != b.origin_node) return a.origin_node < b.origin_node;
  if (a.contour.vertices != b.contour.vertices) return a.contour.vertices < b.contour.vertices;
  return a.raw_points < b.raw_points;
}

/// Summarizes a point set as its characteristic shape, falling back to the
/// distinct raw points when no polygon exists.
inline ClusterSummary summarize(std::span<const Point2D> shape_points, std::size_t point_count, Point2D centroid,
                                int origin_node, double lambda_norm) {
  ClusterSummary s;
  s.point_count = point_count;
  s.centroid = centroid;
  s.origin_node = origin_node;
  try {
    s.contour = chi_shape(shape_points, lambda_norm);
  } catch (const DegenerateInput&) {
    s.raw_points = unique_points(shape_points);
  }
  return s;
}

inline ClusterSummary summarize_cluster(std::span<const Point2D> members, int origin_node, double lambda_norm) {
  return summarize(members, members.size(), mean_of(members), origin_node, lambda_norm);
}

namespace detail {

inline BoundingBox summary_box(const ClusterSummary& s) {
  auto b = bounding_box(s.shape_points());
  if (s.degenerate()) {
    b.min_x -= kDuplicateEps;
    b.min_y -= kDuplicateEps;
    b.max_x += kDuplicateEps;
    b.max_y += kDuplicateEps;
  }
  return b;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Overlap between two summaries. Polygons use polygons_overlap; a raw-point
/// summary overlaps a polygon when any of its points is inside, and another
/// raw-point summary when two points coincide.
inline bool summaries_overlap(const ClusterSummary& a, const ClusterSummary& b) {
  if (!a.degenerate() && !b.degenerate()) return polygons_overlap(a.contour, b.contour);
  if (a.degenerate() && b.degenerate()) {
    for (const auto& p : a.raw_points)
      for (const auto& q : b.raw_points)
        if (near_equal(p, q)) return true;
    return false;
  }
  const auto& raw = a.degenerate() ? a : b;
  const auto& poly = a.degenerate() ? b : a;
  for (const auto& p : raw.raw_points)
    if (polygon_contains_point(poly.contour, p)) return true;
  return false;
}

namespace detail {

/// Counts, weighted centroid and minimum origin of a component; the contour
/// comes from `shape_points`.
inline ClusterSummary combine(std::span<const ClusterSummary> members, std::span<const Point2D> shape_points,
                              double lambda_norm) {
  std::size_t count = 0;
  double sx = 0.0, sy = 0.0;
  int origin = members.front().origin_node;
  for (const auto& m : members) {
    count += m.point_count;
    sx += m.centroid.x * static_cast<double>(m.point_count);
    sy += m.centroid.y * static_cast<double>(m.point_count);
    origin = std::min(origin, m.origin_node);
  }
  const Point2D centroid{sx / static_cast<double>(count), sy / static_cast<double>(count)};
  return summarize(shape_points, count, centroid, origin, lambda_norm);
}

}  // namespace detail

/// Merges the members of one overlap component into a single summary whose
/// contour is the characteristic shape of all member contour vertices.
inline ClusterSummary merge_summaries(std::span<const ClusterSummary> members, double lambda_norm) {
  std::vector<Point2D> pts;
  for (const auto& m : members) {
    const auto sp = m.shape_points();
    pts.insert(pts.end(), sp.begin(), sp.end());
  }
  return detail::combine(members, pts, lambda_norm);
}

/// Collapses every connected component of the overlap graph into one summary.
/// Merging is repeated until no two outputs overlap, so the result is a fixed
/// point: applying merge_group again changes nothing. Each merged contour is
/// built from the vertices of the original inputs it absorbed, never from an
/// intermediate contour, so every input vertex stays covered. Output is sorted
/// by summary_less and does not depend on input order.
inline std::vector<ClusterSummary> merge_group(std::vector<ClusterSummary> summaries, double lambda_norm) {
  std::sort(summaries.begin(), summaries.end(), summary_less);
  std::vector<std::vector<Point2D>> sources;
  sources.reserve(summaries.size());
  for (const auto& s : summaries) {
    const auto sp = s.shape_points();
    sources.emplace_back(sp.begin(), sp.end());
  }
  while (true) {
    const std::size_t n = summaries.size();
    std::vector<BoundingBox> boxes(n);
    for (std::size_t i = 0; i < n; ++i) boxes[i] = detail::summary_box(summaries[i]);
    detail::DisjointSets sets(n);
    bool merged_any = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!boxes[i].intersects(boxes[j])) continue;
        if (sets.find(i) == sets.find(j)) continue;
        if (summaries_overlap(summaries[i], summaries[j])) merged_any |= sets.unite(i, j);
      }
    }
    if (!merged_any) break;

    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < n; ++i) components[sets.find(i)].push_back(i);
    std::vector<std::pair<ClusterSummary, std::vector<Point2D>>> next;
    next.reserve(components.size());
    for (const auto& [root, idx] : components) {
      if (idx.size() == 1) {
        next.emplace_back(std::move(summaries[idx[0]]), std::move(sources[idx[0]]));
        continue;
      }
      std::vector<ClusterSummary> members;
      std::vector<Point2D> pts;
      for (const auto i : idx) {
        members.push_back(std::move(summaries[i]));
        pts.insert(pts.end(), sources[i].begin(), sources[i].end());
      }
      auto merged = detail::combine(members, pts, lambda_norm);
      next.emplace_back(std::move(merged), std::move(pts));
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return summary_less(a.first, b.first); });
    summaries.clear();
    sources.clear();
    for (auto& [s, src] : next) {
      summaries.push_back(std::move(s));
      sources.push_back(std::move(src));
    }
  }
  return summaries;
}

/// Groups of node ids per level. levels[0] partitions the leaves; each higher
/// level groups the leaders of the level below. A single leaf has no levels.
struct AggregationTopology {
  int num_leaves = 1;
  int degree = 2;
  std::vector<std::vector<std::vector<int>>> levels;
  int root = 0;

  int height() const { return static_cast<int>(levels.size()); }
};

/// Minimum id; stands in for capacity-based election among identical nodes.
inline int elect_leader(std::span<const int> group) {
  if (group.empty()) throw InvalidTopology("elect_leader: empty group");
  return *std::min_element(group.begin(), group.end());
}

/// Consecutive blocks of `degree` ids. `leaf_order`, when given, is a
/// permutation of the leaf ids that fixes block membership at level 0.
inline AggregationTopology build_topology(int num_leaves, int degree, std::vector<int> leaf_order = {}) {
  if (degree < 2) throw InvalidTopology("build_topology: degree must be >= 2, got " + std::to_string(degree));
  if (num_leaves < 1) throw InvalidTopology("build_topology: need at least one leaf");
  if (leaf_order.empty()) {
    leaf_order.resize(num_leaves);
    std::iota(leaf_order.begin(), leaf_order.end(), 0);
  } else {
    auto sorted = leaf_order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < num_leaves; ++i)
      if (static_cast<int>(sorted.size()) != num_leaves || sorted[i] != i)
        throw InvalidTopology("build_topology: leaf order is not a permutation of 0..N-1");
  }

  AggregationTopology topo;
  topo.num_leaves = num_leaves;
  topo.degree = degree;
  std::vector<int> current = std::move(leaf_order);
  while (current.size() > 1) {
    std::vector<std::vector<int>> groups;
    std::vector<int> leaders;
    for (std::size_t i = 0; i < current.size(); i += degree) {
      const std::size_t end = std::min(current.size(), i + static_cast<std::size_t>(degree));
      groups.emplace_back(current.begin() + static_cast<std::ptrdiff_t>(i), current.begin() + static_cast<std::ptrdiff_t>(end));
      leaders.push_back(elect_leader(groups.back()));
    }
    topo.levels.push_back(std::move(groups));
    current = std::move(leaders);
  }
  topo.root = current.front();
  return topo;
}

struct Message {
  int level = 0;
  int sender = 0;
  int receiver = 0;
  std::size_t summaries_sent = 0;
  std::size_t vertex_count_sent = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

struct MessageLedger {
  std::vector<Message> messages;

  std::size_t total_vertices() const {
    std::size_t s = 0;
    for (const auto& m : messages) s += m.vertex_count_sent;
    return s;
  }
  std::size_t total_summaries() const {
    std::size_t s = 0;
    for (const auto& m : messages) s += m.summaries_sent;
    return s;
  }
  std::vector<Message> level(int l) const {
    std::vector<Message> out;
    for (const auto& m : messages)
      if (m.level == l) out.push_back(m);
    return out;
  }
};

struct AggregationResult {
  std::vector<ClusterSummary> root_summaries;
  MessageLedger ledger;
  /// Per level, the slowest group's merge time (groups run side by side).
  std::vector<double> level_seconds;
};

/// Runs the level-wise protocol. Every leaf id 0..N-1 must be present.
/// Groups within a level are independent and may use up to `workers` threads.
inline AggregationResult run_aggregation(const std::map<int, std::vector<ClusterSummary>>& leaf_summaries,
                                         const AggregationTopology& topo, double lambda_norm, int workers = 1) {
  if (static_cast<int>(leaf_summaries.size()) != topo.num_leaves)
    throw InvalidTopology("run_aggregation: expected " + std::to_string(topo.num_leaves) + " leaves, got " +
                          std::to_string(leaf_summaries.size()));
  for (int i = 0; i < topo.num_leaves; ++i)
    if (!leaf_summaries.count(i)) throw InvalidTopology("run_aggregation: missing leaf " + std::to_string(i));

  std::vector<std::vector<ClusterSummary>> held(topo.num_leaves);
  for (const auto& [id, s] : leaf_summaries) held[id] = s;

  AggregationResult out;
  for (int level = 0; level < topo.height(); ++level) {
    const auto& groups = topo.levels[level];
    std::vector<std::vector<ClusterSummary>> merged(groups.size());
    std::vector<double> seconds(groups.size(), 0.0);
    for (const auto& group : groups) {
      const int leader = elect_leader(group);
      for (const int member : group) {
        if (member == leader) continue;
        std::size_t vertices = 0;
        for (const auto& s : held[member]) vertices += s.vertex_count();
        out.ledger.messages.push_back({level, member, leader, held[member].size(), vertices});
      }
    }
    parallel_for(groups.size(), workers, [&](std::size_t g) {
      const auto start = std::chrono::steady_clock::now();
      std::vector<ClusterSummary> received;
      for (const int member : groups[g]) received.insert(received.end(), held[member].begin(), held[member].end());
      merged[g] = merge_group(std::move(received), lambda_norm);
      seconds[g] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (const int member : groups[g]) held[member].clear();
      held[elect_leader(groups[g])] = std::move(merged[g]);
    }
    out.level_seconds.push_back(seconds.empty() ? 0.0 : *std::max_element(seconds.begin(), seconds.end()));
  }
  out.root_summaries = std::move(held[topo.root]);
  return out;
}

}  // namespace d2ca
