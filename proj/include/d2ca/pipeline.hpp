#pragma once

// End-to-end distributed clustering run: local K-means and contour extraction
// on every node, tree aggregation of the contours, then optional labeling of
// the input points against the global contours.

#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d2ca/aggregation.hpp"
#include "d2ca/chi_shape.hpp"
#include "d2ca/datagen.hpp"
#include "d2ca/error.hpp"
#include "d2ca/kmeans.hpp"
#include "d2ca/metrics.hpp"
#include "d2ca/parallel.hpp"

namespace d2ca {

enum class GroupingMode { Consecutive, Spatial };

struct RunConfig {
  /// K for each node; its length is the number of nodes.
  std::vector<int> k_per_node{10, 10, 10, 10, 10};
  int degree = 2;
  double lambda = kDefaultLambda;
  std::uint64_t seed = 1;
  PartitionScheme partition = PartitionScheme::Random;
  GroupingMode grouping = GroupingMode::Consecutive;
  int max_iter = 100;
  double tol = 1e-4;
  /// Threads for node-local work and group merges; never affects results.
  int workers = 1;
  bool label_points = true;

  int nodes() const { return static_cast<int>(k_per_node.size()); }

  static RunConfig uniform(int nodes, int k) {
    RunConfig c;
    c.k_per_node.assign(static_cast<std::size_t>(std::max(nodes, 0)), k);
    return c;
  }

  void validate() const {
    if (k_per_node.empty()) throw ConfigError("config: need at least one node");
    for (std::size_t i = 0; i < k_per_node.size(); ++i)
      if (k_per_node[i] < 1) throw InvalidK("config: k for node " + std::to_string(i) + " must be >= 1");
    if (degree < 2) throw ConfigError("config: degree must be >= 2");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("config: lambda must lie in [0, 1]");
    if (max_iter < 1) throw ConfigError("config: max_iter must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("config: tol must be > 0");
    if (workers < 1) throw ConfigError("config: workers must be >= 1");
  }
};

struct RunReport {
  /// Root summaries with a polygon contour.
  std::size_t cluster_count = 0;
  /// Root summaries that never grew into a polygon; not part of cluster_count.
  std::size_t outlier_clusters = 0;
  std::size_t total_points = 0;
  std::size_t leaf_summaries = 0;
  std::size_t leaf_contour_vertices = 0;
  double reduction_ratio = 0.0;
  MessageLedger ledger;
  int tree_height = 0;

  std::vector<double> node_local_seconds;
  /// Slowest node's local phase, as if all nodes ran at once.
  double local_max_seconds = 0.0;
  double aggregation_seconds = 0.0;
  double labeling_seconds = 0.0;
  /// local_max_seconds + aggregation_seconds.
  double total_seconds = 0.0;

  std::optional<double> ari;
};

struct GlobalResult {
  std::vector<ClusterSummary> global_contours;
  /// Global cluster id per input point (dataset order), when labeling ran.
  std::vector<int> point_labels;
  RunReport report;
};

/// Index of the contour containing p (lowest id wins), else of the contour
/// with the nearest boundary. Raw-point clusters are measured to their points.
inline int label_point(const std::vector<ClusterSummary>& contours, const std::vector<BoundingBox>& boxes, const Point2D& p) {
  for (std::size_t c = 0; c < contours.size(); ++c) {
    if (contours[c].degenerate() || !boxes[c].contains(p)) continue;
    if (polygon_contains_point(contours[c].contour, p)) return static_cast<int>(c);
  }
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < contours.size(); ++c) {
    double d;
    if (contours[c].degenerate()) {
      d = std::numeric_limits<double>::infinity();
      for (const auto& q : contours[c].raw_points) d = std::min(d, dist(p, q));
    } else {
      d = distance_to_boundary(contours[c].contour, p);
    }
    if (d < bd) {
      bd = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

inline std::vector<int> label_points(std::span<const Point2D> points, const std::vector<ClusterSummary>& contours,
                                     int workers = 1) {
  if (contours.empty()) throw Error("label_points: no global contours");
  std::vector<BoundingBox> boxes;
  for (const auto& c : contours) boxes.push_back(bounding_box(c.shape_points()));
  std::vector<int> labels(points.size());
  const std::size_t chunk = 4096;
  const std::size_t chunks = (points.size() + chunk - 1) / chunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t end = std::min(points.size(), (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) labels[i] = label_point(contours, boxes, points[i]);
  });
  return labels;
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Leaf order for spatial grouping: by bounding-box center, x then y.
inline std::vector<int> spatial_leaf_order(std::span<const DataFragment> fragments) {
  std::vector<std::pair<Point2D, int>> keyed;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    const Point2D c = fragments[i].points.empty() ? Point2D{0, 0} : bounding_box(fragments[i].points).center();
    keyed.emplace_back(c, static_cast<int>(i));
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> order;
  for (const auto& [c, id] : keyed) order.push_back(id);
  return order;
}

}  // namespace detail

/// Local phase for one node: K-means, then one summary per local cluster.
inline std::vector<ClusterSummary> summarize_node(const DataFragment& fragment, int k, std::uint64_t seed,
                                                  const RunConfig& config) {
  std::vector<ClusterSummary> out;
  if (fragment.points.empty()) return out;
  for (const auto& p : fragment.points)
    if (!is_finite(p)) throw DegenerateInput("fragment holds a non-finite coordinate");
  KMeansOptions opt;
  opt.max_iter = config.max_iter;
  opt.tol = config.tol;
  const auto clusters = kmeans(fragment, k, seed, opt);
  std::vector<Point2D> members;
  for (const auto& c : clusters) {
    members.clear();
    for (const auto i : c.members) members.push_back(fragment.points[i]);
    out.push_back(summarize(members, members.size(), c.centroid, fragment.node_id, config.lambda));
  }
  return out;
}

/// Runs the whole algorithm over pre-partitioned fragments; fragment i is node i.
inline GlobalResult run_d2ca(std::span<const DataFragment> fragments, const RunConfig& config) {
  config.validate();
  if (fragments.empty()) throw ConfigError("run_d2ca: no fragments");
  if (static_cast<int>(fragments.size()) != config.nodes())
    throw ConfigError("run_d2ca: " + std::to_string(fragments.size()) + " fragments but " +
                      std::to_string(config.nodes()) + " k values");

  GlobalResult result;
  RunReport& rep = result.report;
  const int n = config.nodes();

  std::vector<std::vector<ClusterSummary>> local(n);
  rep.node_local_seconds.assign(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), config.workers, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      local[i] = summarize_node(fragments[i], config.k_per_node[i], derive_seed(config.seed, i), config);
    } catch (const Error& e) {
      throw PhaseError("local", static_cast<int>(i), e.what());
    }
    rep.node_local_seconds[i] = detail::seconds_since(t0);
  });

  std::map<int, std::vector<ClusterSummary>> leaves;
  for (int i = 0; i < n; ++i) {
    rep.total_points += fragments[i].points.size();
    rep.leaf_summaries += local[i].size();
    for (const auto& s : local[i]) rep.leaf_contour_vertices += s.vertex_count();
    leaves[i] = std::move(local[i]);
  }
  rep.reduction_ratio =
      rep.total_points ? 1.0 - static_cast<double>(rep.leaf_contour_vertices) / static_cast<double>(rep.total_points) : 0.0;
  rep.local_max_seconds = *std::max_element(rep.node_local_seconds.begin(), rep.node_local_seconds.end());

  try {
    const auto topo = build_topology(
        n, config.degree, config.grouping == GroupingMode::Spatial ? detail::spatial_leaf_order(fragments) : std::vector<int>{});
    rep.tree_height = topo.height();
    auto agg = run_aggregation(leaves, topo, config.lambda, config.workers);
    result.global_contours = std::move(agg.root_summaries);
    rep.ledger = std::move(agg.ledger);
    for (double s : agg.level_seconds) rep.aggregation_seconds += s;
  } catch (const Error& e) {
    throw PhaseError("aggregation", -1, e.what());
  }
  for (const auto& s : result.global_contours) rep.outlier_clusters += s.degenerate();
  rep.cluster_count = result.global_contours.size() - rep.outlier_clusters;
  rep.total_seconds = rep.local_max_seconds + rep.aggregation_seconds;

  if (config.label_points && !result.global_contours.empty()) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t total = 0;
    for (const auto& f : fragments) total += f.points.size();
    std::vector<Point2D> pts(total);
    std::vector<char> filled(total, 0);
    std::size_t cursor = 0;
    for (const auto& f : fragments) {
      for (std::size_t j = 0; j < f.points.size(); ++j) {
        const std::size_t idx = f.source_indices.empty() ? cursor + j : f.source_indices[j];
        if (idx >= total || filled[idx]) throw PhaseError("labeling", f.node_id, "fragment indices do not partition the dataset");
        pts[idx] = f.points[j];
        filled[idx] = 1;
      }
      cursor += f.points.size();
    }
    result.point_labels = label_points(pts, result.global_contours, config.workers);
    rep.labeling_seconds = detail::seconds_since(t0);
  }
  return result;
}

/// Partitions a labeled dataset per the config, runs, and scores the labels.
inline GlobalResult run_d2ca(const LabeledDataset& dataset, const RunConfig& config) {
  config.validate();
  const auto fragments = partition(dataset, config.nodes(), config.partition, derive_seed(config.seed, 0xfa57));
  auto result = run_d2ca(fragments, config);
  if (!result.point_labels.empty() && dataset.labels.size() == dataset.points.size() && dataset.size() >= 2)
    result.report.ari = adjusted_rand_index(result.point_labels, dataset.labels);
  return result;
}

struct BaselineResult {
  std::vector<int> labels;
  double seconds = 0.0;
  std::size_t clusters = 0;
};

/// Single-process K-means over the whole dataset, the centralized comparison point.
inline BaselineResult run_centralized_baseline(std::span<const Point2D> points, int k, std::uint64_t seed,
                                               const KMeansOptions& opt = {}) {
  if (k < 1) throw InvalidK("baseline: k must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const auto clusters = kmeans(points, k, seed, opt);
  BaselineResult r;
  r.seconds = detail::seconds_since(t0);
  r.labels.assign(points.size(), 0);
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (const auto i : clusters[c].members) r.labels[i] = static_cast<int>(c);
  r.clusters = clusters.size();
  return r;
}

}  // namespace d2ca
