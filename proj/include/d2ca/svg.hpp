#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "d2ca/aggregation.hpp"
#include "d2ca/error.hpp"
#include "d2ca/io.hpp"

namespace d2ca::svg {

struct PlotStyle {
  std::vector<std::string> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                   "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a"};
  double point_radius = 1.2;
  double stroke_width = 2.0;
  double width = 800.0;
  double height = 600.0;

  void validate() const {
    if (palette.empty()) throw ConfigError("plot style: palette is empty");
    if (!(point_radius > 0 && stroke_width > 0 && width > 0 && height > 0))
      throw ConfigError("plot style: sizes must be positive");
  }
  const std::string& color(std::size_t cluster) const { return palette[cluster % palette.size()]; }
};

/// Points colored by label, one <polygon> per polygon cluster and a ring of
/// circles for each outlier cluster. The y axis points up.
inline void write_plot(std::ostream& out, std::span<const Point2D> points, std::span<const int> labels,
                       const std::vector<ClusterSummary>& clusters, const PlotStyle& style = {}) {
  style.validate();
  std::vector<Point2D> all(points.begin(), points.end());
  for (const auto& c : clusters) {
    const auto sp = c.shape_points();
    all.insert(all.end(), sp.begin(), sp.end());
  }
  BoundingBox box{0, 0, 1, 1};
  if (!all.empty()) box = bounding_box(all);
  const double margin = 10.0;
  const double span_x = std::max(box.max_x - box.min_x, 1e-9);
  const double span_y = std::max(box.max_y - box.min_y, 1e-9);
  const double scale = std::min((style.width - 2 * margin) / span_x, (style.height - 2 * margin) / span_y);
  auto sx = [&](double x) { return io::format_fixed(margin + (x - box.min_x) * scale, 2); };
  auto sy = [&](double y) { return io::format_fixed(style.height - margin - (y - box.min_y) * scale, 2); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << io::format_number(style.width) << "\" height=\""
      << io::format_number(style.height) << "\" viewBox=\"0 0 " << io::format_number(style.width) << ' '
      << io::format_number(style.height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g id=\"points\">\n";
  const std::string r = io::format_number(style.point_radius);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t label = i < labels.size() && labels[i] >= 0 ? static_cast<std::size_t>(labels[i]) : 0;
    out << "<circle cx=\"" << sx(points[i].x) << "\" cy=\"" << sy(points[i].y) << "\" r=\"" << r << "\" fill=\""
        << style.color(label) << "\" fill-opacity=\"0.5\"/>\n";
  }
  out << "</g>\n<g id=\"contours\" fill=\"none\" stroke-width=\"" << io::format_number(style.stroke_width) << "\">\n";
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].degenerate()) {
      for (const auto& p : clusters[c].raw_points)
        out << "<circle class=\"outlier\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\""
            << io::format_number(4 * style.point_radius) << "\" stroke=\"" << style.color(c) << "\"/>\n";
      continue;
    }
    out << "<polygon id=\"cluster-" << c << "\" stroke=\"" << style.color(c) << "\" points=\"";
    const auto& v = clusters[c].contour.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << sx(v[i].x) << ',' << sy(v[i].y);
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace d2ca::svg
