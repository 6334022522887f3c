#pragma once

// Synthetic spatial datasets: uniform samples inside discs, ovals and linked
// oval pairs, with one ground-truth label per shape.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "d2ca/error.hpp"
#include "d2ca/kmeans.hpp"
#include "d2ca/point.hpp"
#include "d2ca/rng.hpp"

namespace d2ca {

enum class ShapeKind { Disc, Oval, LinkedPair };

/// One ground-truth cluster. A disc uses radii.first only. A linked pair is two
/// overlapping ovals of the given radii whose centers sit 0.6 * radii.first
/// either side of `center` along the rotated x axis.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Disc;
  Point2D center;
  std::pair<double, double> radii{1.0, 1.0};
  double rotation = 0.0;
  std::size_t count = 1;
};

struct LabeledDataset {
  std::vector<Point2D> points;
  std::vector<int> labels;
  std::vector<ShapeSpec> spec;

  std::size_t size() const { return points.size(); }
  int num_labels() const { return static_cast<int>(spec.size()); }
};

inline constexpr double kLinkOffset = 0.6;

/// Radius of a circle about `center` that encloses the whole shape.
inline double bounding_radius(const ShapeSpec& s) {
  switch (s.kind) {
    case ShapeKind::Disc:
      return s.radii.first;
    case ShapeKind::Oval:
      return std::max(s.radii.first, s.radii.second);
    case ShapeKind::LinkedPair:
      return kLinkOffset * s.radii.first + std::max(s.radii.first, s.radii.second);
  }
  return 0.0;
}

/// Checks counts, radii, and that distinct shapes are separated by at least 10%
/// of their mean bounding radius.
inline void validate_spec(const std::vector<ShapeSpec>& spec) {
  if (spec.empty()) throw SpecError("dataset spec has no shapes");
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& s = spec[i];
    if (s.count < 1) throw SpecError("shape " + std::to_string(i) + ": count must be >= 1");
    if (!(s.radii.first > 0.0) || !(s.radii.second > 0.0))
      throw SpecError("shape " + std::to_string(i) + ": radii must be positive");
    if (!is_finite(s.center) || !std::isfinite(s.rotation)) throw SpecError("shape " + std::to_string(i) + ": non-finite value");
  }
  for (std::size_t i = 0; i < spec.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      const double ri = bounding_radius(spec[i]);
      const double rj = bounding_radius(spec[j]);
      const double gap = dist(spec[i].center, spec[j].center) - ri - rj;
      if (gap < 0.1 * 0.5 * (ri + rj))
        throw SpecError("shapes " + std::to_string(i) + " and " + std::to_string(j) + " overlap or nearly touch");
    }
  }
}

namespace detail {

inline Point2D sample_oval(Rng& rng, Point2D c, double rx, double ry, double rot) {
  const double r = std::sqrt(rng.uniform());
  const double a = 2.0 * std::numbers::pi * rng.uniform();
  const double lx = rx * r * std::cos(a);
  const double ly = ry * r * std::sin(a);
  const double cs = std::cos(rot), sn = std::sin(rot);
  return {c.x + lx * cs - ly * sn, c.y + lx * sn + ly * cs};
}

}  // namespace detail

/// Uniform samples inside every shape. Each shape draws from its own stream
/// derived from `seed`, so changing one count leaves the others untouched.
inline LabeledDataset generate(const std::vector<ShapeSpec>& spec, std::uint64_t seed) {
  validate_spec(spec);
  LabeledDataset ds;
  ds.spec = spec;
  std::size_t total = 0;
  for (const auto& s : spec) total += s.count;
  ds.points.reserve(total);
  ds.labels.reserve(total);
  for (std::size_t label = 0; label < spec.size(); ++label) {
    const auto& s = spec[label];
    Rng rng(derive_seed(seed, label));
    const auto [rx, ry] = s.radii;
    for (std::size_t i = 0; i < s.count; ++i) {
      Point2D p;
      switch (s.kind) {
        case ShapeKind::Disc:
          p = detail::sample_oval(rng, s.center, rx, rx, 0.0);
          break;
        case ShapeKind::Oval:
          p = detail::sample_oval(rng, s.center, rx, ry, s.rotation);
          break;
        case ShapeKind::LinkedPair: {
          const double side = i < s.count / 2 ? -1.0 : 1.0;
          const double off = side * kLinkOffset * rx;
          const Point2D lobe{s.center.x + off * std::cos(s.rotation), s.center.y + off * std::sin(s.rotation)};
          p = detail::sample_oval(rng, lobe, rx, ry, s.rotation);
          break;
        }
      }
      ds.points.push_back(p);
      ds.labels.push_back(static_cast<int>(label));
    }
  }
  return ds;
}

/// The three benchmark scenes. Point and cluster counts are fixed; shape
/// placements are chosen to keep every pair of shapes well separated.
inline std::vector<ShapeSpec> preset_spec(const std::string& name) {
  using K = ShapeKind;
  if (name == "dataset1") {
    // five egg-like ovals, one large
    return {
        {K::Oval, {300, 600}, {200, 120}, 0.3, 4400},
        {K::Oval, {750, 700}, {110, 70}, -0.5, 2600},
        {K::Oval, {800, 300}, {130, 80}, 1.2, 2600},
        {K::Oval, {350, 200}, {100, 60}, 0.0, 2200},
        {K::Oval, {1150, 550}, {80, 120}, 0.2, 2200},
    };
  }
  if (name == "dataset2") {
    // two small circles, one big circle, two linked ovals
    return {
        {K::Disc, {350, 550}, {220, 220}, 0.0, 12000},
        {K::Disc, {850, 800}, {90, 90}, 0.0, 3000},
        {K::Disc, {900, 500}, {90, 90}, 0.0, 3350},
        {K::LinkedPair, {750, 150}, {110, 70}, 0.0, 12000},
    };
  }
  if (name == "dataset3") {
    // four circles plus two linked circles
    return {
        {K::Disc, {200, 200}, {100, 100}, 0.0, 3000},
        {K::Disc, {550, 200}, {100, 100}, 0.0, 3000},
        {K::Disc, {200, 600}, {110, 110}, 0.0, 3000},
        {K::Disc, {550, 650}, {90, 90}, 0.0, 3080},
        {K::LinkedPair, {950, 400}, {100, 100}, std::numbers::pi / 2, 5000},
    };
  }
  throw SpecError("unknown preset '" + name + "' (expected dataset1, dataset2 or dataset3)");
}

inline LabeledDataset generate_preset(const std::string& name, std::uint64_t seed) {
  return generate(preset_spec(name), seed);
}

/// Re-samples the same shapes at `target_count` total points, keeping each
/// shape's share (largest-remainder rounding, at least one point per shape).
inline LabeledDataset scale_dataset(const LabeledDataset& ds, std::size_t target_count, std::uint64_t seed) {
  const std::size_t shapes = ds.spec.size();
  if (target_count < shapes) throw SpecError("scale_dataset: target count below number of shapes");
  std::size_t total = 0;
  for (const auto& s : ds.spec) total += s.count;
  std::vector<std::size_t> counts(shapes);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < shapes; ++i) {
    const double exact = static_cast<double>(target_count) * static_cast<double>(ds.spec[i].count) / static_cast<double>(total);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(-(exact - std::floor(exact)), i);
  }
  std::sort(remainders.begin(), remainders.end());
  for (std::size_t r = 0; assigned < target_count; ++r, ++assigned) ++counts[remainders[r % shapes].second];
  for (std::size_t i = 0; i < shapes; ++i) {
    if (counts[i] > 0) continue;
    const auto big = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    --counts[big];
    ++counts[i];
  }
  auto spec = ds.spec;
  for (std::size_t i = 0; i < shapes; ++i) spec[i].count = counts[i];
  return generate(spec, seed);
}

enum class PartitionScheme { Random, SpatialGrid };

/// Splits the dataset over `num_nodes` fragments. Random: seeded shuffle cut
/// into near-equal parts. SpatialGrid: a ceil(sqrt(N))^2 grid over the
/// bounding box, cells dealt to nodes round-robin. Fragments keep dataset order.
inline std::vector<DataFragment> partition(const LabeledDataset& ds, int num_nodes, PartitionScheme scheme,
                                           std::uint64_t seed) {
  if (num_nodes < 1) throw ConfigError("partition: need at least one node");
  const std::size_t n = ds.size();
  std::vector<int> owner(n, 0);
  if (scheme == PartitionScheme::Random) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const std::size_t base = n / num_nodes;
    const std::size_t extra = n % num_nodes;
    std::size_t pos = 0;
    for (int node = 0; node < num_nodes; ++node) {
      const std::size_t len = base + (static_cast<std::size_t>(node) < extra ? 1 : 0);
      for (std::size_t k = 0; k < len; ++k) owner[order[pos++]] = node;
    }
  } else if (n > 0) {
    const int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(num_nodes))));
    const auto box = bounding_box(ds.points);
    const double w = std::max(box.max_x - box.min_x, 1e-12);
    const double h = std::max(box.max_y - box.min_y, 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      const int cx = std::min(g - 1, static_cast<int>((ds.points[i].x - box.min_x) / w * g));
      const int cy = std::min(g - 1, static_cast<int>((ds.points[i].y - box.min_y) / h * g));
      owner[i] = (cy * g + cx) % num_nodes;
    }
  }
  std::vector<DataFragment> frags(num_nodes);
  for (int node = 0; node < num_nodes; ++node) frags[node].node_id = node;
  for (std::size_t i = 0; i < n; ++i) {
    frags[owner[i]].points.push_back(ds.points[i]);
    frags[owner[i]].source_indices.push_back(i);
  }
  return frags;
}

}  // namespace d2ca
