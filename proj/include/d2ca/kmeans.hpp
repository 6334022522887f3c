#pragma once

// Lloyd's K-means with k-means++ seeding, used as the per-node local
// clustering step. Clusters that lose every member during the iterations are
// dropped, so the result may hold fewer than k clusters.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "d2ca/error.hpp"
#include "d2ca/point.hpp"
#include "d2ca/rng.hpp"

namespace d2ca {

/// The part of the dataset owned by one node.
struct DataFragment {
  int node_id = 0;
  std::vector<Point2D> points;
  /// Index of each point in the full dataset, when known.
  std::vector<std::size_t> source_indices;
};

struct LocalCluster {
  Point2D centroid;
  std::vector<std::size_t> members;
};

struct KMeansOptions {
  int max_iter = 100;
  double tol = 1e-4;
  /// When set, receives the inertia after every Lloyd iteration.
  std::vector<double>* inertia_trace = nullptr;
};

namespace detail {

inline std::vector<Point2D> kmeanspp_seed(std::span<const Point2D> pts, int k, Rng& rng) {
  const std::size_t n = pts.size();
  std::vector<Point2D> centers;
  centers.reserve(k);
  centers.push_back(pts[rng.below(n)]);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = dist2(pts[i], centers[0]);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    if (!(total > 0.0)) break;  // fewer distinct points than k
    const double r = rng.uniform() * total;
    double acc = 0.0;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] <= 0.0) continue;
      acc += d2[i];
      pick = i;
      if (acc > r) break;
    }
    centers.push_back(pts[pick]);
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], dist2(pts[i], centers.back()));
  }
  return centers;
}

inline std::size_t nearest(const std::vector<Point2D>& centers, const Point2D& p) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = dist2(p, centers[c]);
    if (d < bd) {
      bd = d;
      best = c;
    }
  }
  return best;
}

}  // namespace detail

/// Deterministic in (points, k, seed). Throws InvalidK when k < 1.
inline std::vector<LocalCluster> kmeans(std::span<const Point2D> pts, int k, std::uint64_t seed,
                                        const KMeansOptions& opt = {}) {
  if (k < 1) throw InvalidK("kmeans: k must be >= 1, got " + std::to_string(k));
  if (pts.empty()) throw Error("kmeans: empty fragment");
  if (opt.max_iter < 1 || !(opt.tol > 0.0)) throw Error("kmeans: max_iter must be >= 1 and tol > 0");

  Rng rng(seed);
  std::vector<Point2D> centers = detail::kmeanspp_seed(pts, k, rng);
  const std::size_t n = pts.size();
  std::vector<std::uint32_t> assign(n);

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    const std::size_t m = centers.size();
    std::vector<double> sx(m, 0.0), sy(m, 0.0);
    std::vector<std::size_t> count(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = detail::nearest(centers, pts[i]);
      assign[i] = static_cast<std::uint32_t>(c);
      sx[c] += pts[i].x;
      sy[c] += pts[i].y;
      ++count[c];
    }

    // empty clusters are dropped, survivors are renumbered in order
    std::vector<Point2D> next;
    std::vector<std::uint32_t> remap(m);
    double shift = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      if (count[c] == 0) continue;
      remap[c] = static_cast<std::uint32_t>(next.size());
      const Point2D mean{sx[c] / static_cast<double>(count[c]), sy[c] / static_cast<double>(count[c])};
      shift = std::max(shift, dist(mean, centers[c]));
      next.push_back(mean);
    }
    if (next.size() != m)
      for (auto& a : assign) a = remap[a];
    centers = std::move(next);

    if (opt.inertia_trace) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += dist2(pts[i], centers[assign[i]]);
      opt.inertia_trace->push_back(s);
    }
    if (shift < opt.tol) break;
  }

  std::vector<LocalCluster> out(centers.size());
  for (std::size_t c = 0; c < centers.size(); ++c) out[c].centroid = centers[c];
  for (std::size_t i = 0; i < n; ++i) out[assign[i]].members.push_back(i);
  return out;
}

inline std::vector<LocalCluster> kmeans(const DataFragment& fragment, int k, std::uint64_t seed,
                                        const KMeansOptions& opt = {}) {
  return kmeans(std::span<const Point2D>(fragment.points), k, seed, opt);
}

/// Sum of squared distances to the owning centroid. Throws PartitionViolation
/// unless the member lists partition the fragment indices.
inline double inertia(std::span<const Point2D> pts, const std::vector<LocalCluster>& clusters) {
  std::vector<char> seen(pts.size(), 0);
  double s = 0.0;
  for (const auto& c : clusters) {
    for (const auto i : c.members) {
      if (i >= pts.size() || seen[i]) throw PartitionViolation("inertia: index " + std::to_string(i) + " repeated or out of range");
      seen[i] = 1;
      s += dist2(pts[i], c.centroid);
    }
  }
  for (const char v : seen)
    if (!v) throw PartitionViolation("inertia: clusters do not cover the fragment");
  return s;
}

inline double inertia(const DataFragment& fragment, const std::vector<LocalCluster>& clusters) {
  return inertia(std::span<const Point2D>(fragment.points), clusters);
}

}  // namespace d2ca
