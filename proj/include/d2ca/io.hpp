#pragma once

// Text formats for points, labels, contours, configs, shape specs and run
// reports. Numbers are written in shortest round-trip form, so a file written
// twice from the same values is byte-identical.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "d2ca/error.hpp"
#include "d2ca/pipeline.hpp"

namespace d2ca::io {

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

inline double parse_double(std::string_view s, const std::string& context) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(context + "expected a number, got '" + std::string(s) + "'");
  return v;
}

template <class Int>
Int parse_int(std::string_view s, const std::string& context) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(context + "expected an integer, got '" + std::string(s) + "'");
  return v;
}

/// Blank lines and lines starting with '#' carry no data.
inline bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  return out;
}

// ---- points and labels -----------------------------------------------------

inline std::vector<Point2D> read_points(std::istream& in, bool header = false, const std::string& source = "points") {
  std::vector<Point2D> pts;
  std::string line;
  std::size_t n = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++n;
    if (first && header) {
      first = false;
      continue;
    }
    first = false;
    if (skippable(line)) continue;
    const auto f = split(line, ',');
    if (f.size() != 2) throw ParseError(where(source, n) + "expected 'x,y'");
    const Point2D p{parse_double(f[0], where(source, n)), parse_double(f[1], where(source, n))};
    if (!is_finite(p)) throw ParseError(where(source, n) + "non-finite coordinate");
    pts.push_back(p);
  }
  return pts;
}

inline void write_points(std::ostream& out, std::span<const Point2D> pts, bool header = false) {
  if (header) out << "x,y\n";
  for (const auto& p : pts) out << format_number(p.x) << ',' << format_number(p.y) << '\n';
}

inline std::vector<int> read_labels(std::istream& in, const std::string& source = "labels") {
  std::vector<int> labels;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (skippable(line)) continue;
    labels.push_back(parse_int<int>(line, where(source, n)));
  }
  return labels;
}

inline void write_labels(std::ostream& out, std::span<const int> labels) {
  for (int l : labels) out << l << '\n';
}

// ---- contours --------------------------------------------------------------

/// One line per global cluster: id followed by the contour ring, or by the raw
/// points of an outlier cluster.
inline void write_contours(std::ostream& out, const std::vector<ClusterSummary>& contours) {
  for (std::size_t c = 0; c < contours.size(); ++c) {
    out << c;
    for (const auto& p : contours[c].shape_points()) out << ',' << format_number(p.x) << ',' << format_number(p.y);
    out << '\n';
  }
}

inline std::vector<std::vector<Point2D>> read_contours(std::istream& in, const std::string& source = "contours") {
  std::vector<std::vector<Point2D>> rings;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (skippable(line)) continue;
    const auto f = split(line, ',');
    if (f.size() < 3 || f.size() % 2 == 0) throw ParseError(where(source, n) + "expected 'id,x1,y1,...'");
    if (parse_int<std::size_t>(f[0], where(source, n)) != rings.size())
      throw ParseError(where(source, n) + "contour ids must count up from 0");
    std::vector<Point2D> ring;
    for (std::size_t i = 1; i < f.size(); i += 2)
      ring.push_back({parse_double(f[i], where(source, n)), parse_double(f[i + 1], where(source, n))});
    rings.push_back(std::move(ring));
  }
  return rings;
}

// ---- run config ------------------------------------------------------------

inline std::string to_string(PartitionScheme s) { return s == PartitionScheme::Random ? "random" : "grid"; }
inline std::string to_string(GroupingMode g) { return g == GroupingMode::Consecutive ? "consecutive" : "spatial"; }

inline std::vector<int> parse_k_list(std::string_view s, const std::string& context) {
  std::vector<int> ks;
  for (const auto f : split(s, ',')) ks.push_back(parse_int<int>(f, context));
  return ks;
}

/// Flat `key = value` lines. Keys: nodes, k, degree, lambda, seed, partition,
/// grouping, max_iter, tol, workers. `k` is a single value (applied to every
/// node) or one comma-separated value per node.
inline RunConfig read_config(std::istream& in, const std::string& source = "config") {
  RunConfig c;
  std::optional<int> nodes;
  std::vector<int> ks;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where(source, n) + "expected 'key = value'");
    const std::string key(trim(std::string_view(line).substr(0, eq)));
    const auto value = trim(std::string_view(line).substr(eq + 1));
    const auto ctx = where(source, n);
    if (key == "nodes") nodes = parse_int<int>(value, ctx);
    else if (key == "k") ks = parse_k_list(value, ctx);
    else if (key == "degree") c.degree = parse_int<int>(value, ctx);
    else if (key == "lambda") c.lambda = parse_double(value, ctx);
    else if (key == "seed") c.seed = parse_int<std::uint64_t>(value, ctx);
    else if (key == "max_iter") c.max_iter = parse_int<int>(value, ctx);
    else if (key == "tol") c.tol = parse_double(value, ctx);
    else if (key == "workers") c.workers = parse_int<int>(value, ctx);
    else if (key == "partition") {
      if (value == "random") c.partition = PartitionScheme::Random;
      else if (value == "grid") c.partition = PartitionScheme::SpatialGrid;
      else throw ConfigError(ctx + "partition must be 'random' or 'grid'");
    } else if (key == "grouping") {
      if (value == "consecutive") c.grouping = GroupingMode::Consecutive;
      else if (value == "spatial") c.grouping = GroupingMode::Spatial;
      else throw ConfigError(ctx + "grouping must be 'consecutive' or 'spatial'");
    } else {
      throw ConfigError(ctx + "unknown key '" + key + "'");
    }
  }
  if (nodes && *nodes < 1) throw ConfigError(source + ": nodes must be >= 1");
  if (ks.empty()) ks = {c.k_per_node.front()};
  if (ks.size() == 1) c.k_per_node.assign(static_cast<std::size_t>(nodes.value_or(c.nodes())), ks.front());
  else if (nodes && static_cast<std::size_t>(*nodes) != ks.size())
    throw ConfigError(source + ": " + std::to_string(ks.size()) + " k values for " + std::to_string(*nodes) + " nodes");
  else c.k_per_node = ks;
  c.validate();
  return c;
}

inline RunConfig read_config_file(const std::string& path) {
  auto in = open_in(path);
  return read_config(in, path);
}

inline void write_config(std::ostream& out, const RunConfig& c) {
  out << "nodes = " << c.nodes() << '\n' << "k = ";
  for (std::size_t i = 0; i < c.k_per_node.size(); ++i) out << (i ? "," : "") << c.k_per_node[i];
  out << '\n'
      << "degree = " << c.degree << '\n'
      << "lambda = " << format_number(c.lambda) << '\n'
      << "seed = " << c.seed << '\n'
      << "partition = " << to_string(c.partition) << '\n'
      << "grouping = " << to_string(c.grouping) << '\n'
      << "max_iter = " << c.max_iter << '\n'
      << "tol = " << format_number(c.tol) << '\n'
      << "workers = " << c.workers << '\n';
}

// ---- shape specs -----------------------------------------------------------

/// One shape per line:
///   disc,cx,cy,r,count
///   oval,cx,cy,rx,ry,rotation,count
///   linked,cx,cy,rx,ry,rotation,count
/// Rotations are in degrees.
inline std::vector<ShapeSpec> read_spec(std::istream& in, const std::string& source = "spec") {
  std::vector<ShapeSpec> spec;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (skippable(line)) continue;
    const auto f = split(line, ',');
    const auto ctx = where(source, n);
    ShapeSpec s;
    if (f[0] == "disc") {
      if (f.size() != 5) throw ParseError(ctx + "expected 'disc,cx,cy,r,count'");
      s.kind = ShapeKind::Disc;
      const double r = parse_double(f[3], ctx);
      s.radii = {r, r};
    } else if (f[0] == "oval" || f[0] == "linked") {
      if (f.size() != 7) throw ParseError(ctx + "expected '" + std::string(f[0]) + ",cx,cy,rx,ry,rotation,count'");
      s.kind = f[0] == "oval" ? ShapeKind::Oval : ShapeKind::LinkedPair;
      s.radii = {parse_double(f[3], ctx), parse_double(f[4], ctx)};
      s.rotation = parse_double(f[5], ctx) * std::numbers::pi / 180.0;
    } else {
      throw ParseError(ctx + "unknown shape '" + std::string(f[0]) + "' (disc, oval or linked)");
    }
    s.center = {parse_double(f[1], ctx), parse_double(f[2], ctx)};
    s.count = parse_int<std::size_t>(f.back(), ctx);
    spec.push_back(s);
  }
  return spec;
}

// ---- report ----------------------------------------------------------------

/// Deterministic `key: value` summary of a run; timings are kept out so the
/// report does not change between runs or worker counts.
inline void write_report(std::ostream& out, const RunReport& r) {
  out << "cluster_count: " << r.cluster_count << '\n'
      << "outlier_clusters: " << r.outlier_clusters << '\n'
      << "total_points: " << r.total_points << '\n'
      << "leaf_summaries: " << r.leaf_summaries << '\n'
      << "leaf_contour_vertices: " << r.leaf_contour_vertices << '\n'
      << "reduction_ratio: " << format_fixed(r.reduction_ratio, 6) << '\n'
      << "tree_height: " << r.tree_height << '\n'
      << "messages: " << r.ledger.messages.size() << '\n'
      << "summaries_sent: " << r.ledger.total_summaries() << '\n'
      << "vertices_sent: " << r.ledger.total_vertices() << '\n';
  for (int l = 0; l < r.tree_height; ++l) {
    std::size_t s = 0, v = 0;
    for (const auto& m : r.ledger.level(l)) {
      s += m.summaries_sent;
      v += m.vertex_count_sent;
    }
    out << "level_" << l << "_sent: " << s << " summaries, " << v << " vertices\n";
  }
  if (r.ari) out << "ari: " << format_fixed(*r.ari, 6) << '\n';
}

inline void write_timings(std::ostream& out, const RunReport& r) {
  out << "local_max_seconds: " << format_fixed(r.local_max_seconds, 6) << '\n'
      << "aggregation_seconds: " << format_fixed(r.aggregation_seconds, 6) << '\n'
      << "labeling_seconds: " << format_fixed(r.labeling_seconds, 6) << '\n'
      << "total_seconds: " << format_fixed(r.total_seconds, 6) << '\n';
  for (std::size_t i = 0; i < r.node_local_seconds.size(); ++i)
    out << "node_" << i << "_local_seconds: " << format_fixed(r.node_local_seconds[i], 6) << '\n';
}

/// One line per message: level,sender,receiver,summaries,vertices.
inline void write_ledger(std::ostream& out, const MessageLedger& ledger) {
  out << "level,sender,receiver,summaries,vertices\n";
  for (const auto& m : ledger.messages)
    out << m.level << ',' << m.sender << ',' << m.receiver << ',' << m.summaries_sent << ',' << m.vertex_count_sent << '\n';
}

}  // namespace d2ca::io
