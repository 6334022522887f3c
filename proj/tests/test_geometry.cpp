#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <utility>

#include "d2ca/chi_shape.hpp"
#include "d2ca/delaunay.hpp"
#include "d2ca/polygon.hpp"
#include "test_oracles.hpp"

using namespace d2ca;

namespace {

Polygon unit_square() { return Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }

Polygon rect(double x0, double y0, double x1, double y1) { return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}; }

void expect_valid_triangulation(const Triangulation& t) {
  // every triangle CCW, twins consistent, every edge in at most two triangles
  std::map<std::pair<int, int>, int> edge_uses;
  double area = 0.0;
  for (std::size_t i = 0; i < t.triangle_count(); ++i) {
    auto [a, b, c] = t.triangle(i);
    ASSERT_GT(cross(t.vertices[a], t.vertices[b], t.vertices[c]), 0.0);
    area += 0.5 * cross(t.vertices[a], t.vertices[b], t.vertices[c]);
    for (auto [u, v] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) ++edge_uses[{std::min(u, v), std::max(u, v)}];
  }
  for (std::size_t h = 0; h < t.corners.size(); ++h) {
    const int tw = t.twins[h];
    if (tw == -1) continue;
    EXPECT_EQ(t.twins[tw], static_cast<int>(h));
    EXPECT_EQ(t.corners[tw], t.corners[next_halfedge(static_cast<int>(h))]);
  }
  std::set<std::pair<int, int>> hull_edges;
  for (auto [u, v] : t.boundary_edges()) hull_edges.insert({std::min(u, v), std::max(u, v)});
  for (const auto& [e, n] : edge_uses) {
    EXPECT_LE(n, 2);
    EXPECT_EQ(n == 1, hull_edges.count(e) == 1);
  }
  // triangles tile the convex hull without overlap
  const double hull_area = oracle::shoelace(convex_hull(t.vertices).vertices);
  EXPECT_NEAR(area, hull_area, 1e-9 * std::max(1.0, hull_area));
}

}  // namespace

TEST(Delaunay, ThreePointsGiveOneTriangle) {
  std::vector<Point2D> pts{{0, 0}, {1, 0}, {0, 1}};
  auto t = delaunay_triangulate(pts);
  EXPECT_EQ(t.triangle_count(), 1u);
  EXPECT_EQ(t.boundary_edges().size(), 3u);
  expect_valid_triangulation(t);
}

TEST(Delaunay, UnitSquareHasTwoTrianglesAndOneInternalEdge) {
  std::vector<Point2D> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto t = delaunay_triangulate(pts);
  EXPECT_EQ(t.triangle_count(), 2u);
  EXPECT_EQ(t.boundary_edges().size(), 4u);
  int internal = 0;
  for (std::size_t h = 0; h < t.twins.size(); ++h)
    if (t.twins[h] > static_cast<int>(h)) ++internal;
  EXPECT_EQ(internal, 1);
  expect_valid_triangulation(t);
}

TEST(Delaunay, EmptyCircumcircleOnDiscSamples) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    auto pts = oracle::random_disc(rng, 200, {3.0, -2.0}, 10.0);
    auto t = delaunay_triangulate(pts);
    EXPECT_EQ(t.vertices.size(), 200u);
    expect_valid_triangulation(t);
    EXPECT_EQ(oracle::circumcircle_violations(t), 0);
  }
}

TEST(Delaunay, EmptyCircumcircleUpTo500Points) {
  std::mt19937_64 rng(7);
  for (int n : {3, 4, 10, 57, 250, 500}) {
    auto pts = oracle::random_box(rng, n, 0, 0, 100, 50);
    auto t = delaunay_triangulate(pts);
    expect_valid_triangulation(t);
    EXPECT_EQ(oracle::circumcircle_violations(t), 0) << "n=" << n;
  }
}

TEST(Delaunay, GridWithCocircularQuadsStaysValid) {
  std::vector<Point2D> pts;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 9; ++j) pts.push_back({double(i), double(j)});
  auto t = delaunay_triangulate(pts);
  EXPECT_EQ(t.triangle_count(), 2u * 11 * 8);
  expect_valid_triangulation(t);
  EXPECT_EQ(oracle::circumcircle_violations(t), 0);
}

TEST(Delaunay, DuplicatesAreMerged) {
  std::vector<Point2D> pts{{0, 0}, {1, 0}, {0, 1}, {0, 0}, {1e-12, 0}, {1, 0}};
  auto t = delaunay_triangulate(pts);
  EXPECT_EQ(t.vertices.size(), 3u);
  EXPECT_EQ(t.triangle_count(), 1u);
}

TEST(Delaunay, InputOrderDoesNotMatter) {
  std::mt19937_64 rng(3);
  auto pts = oracle::random_box(rng, 300, 0, 0, 1, 1);
  auto a = delaunay_triangulate(pts);
  std::shuffle(pts.begin(), pts.end(), rng);
  auto b = delaunay_triangulate(pts);
  EXPECT_EQ(a.corners, b.corners);
  EXPECT_EQ(a.hull, b.hull);
}

TEST(Delaunay, DegenerateInputs) {
  EXPECT_THROW(delaunay_triangulate(std::vector<Point2D>{{0, 0}, {1, 1}}), DegenerateInput);
  EXPECT_THROW(delaunay_triangulate(std::vector<Point2D>{{0, 0}, {0, 0}, {0, 0}, {1e-10, 0}}), DegenerateInput);
  EXPECT_THROW(delaunay_triangulate(std::vector<Point2D>{{0, 0}, {1, 1}, {2, 2}, {5, 5}}), DegenerateInput);
  EXPECT_THROW(delaunay_triangulate(std::vector<Point2D>{{0, 0}, {1, 1}, {NAN, 2}}), DegenerateInput);
}

TEST(ConvexHull, SquareWithCenter) {
  std::vector<Point2D> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  auto h = convex_hull(pts);
  EXPECT_EQ(h, unit_square());
}

TEST(ConvexHull, TriangleIsCounterClockwise) {
  std::vector<Point2D> pts{{0, 0}, {0, 1}, {1, 0}};
  auto h = convex_hull(pts);
  ASSERT_EQ(h.size(), 3u);
  EXPECT_GT(signed_area(h.vertices), 0.0);
}

TEST(ConvexHull, RandomPointsAreAllInside) {
  std::mt19937_64 rng(11);
  auto pts = oracle::random_box(rng, 1000, -5, -5, 5, 5);
  auto h = convex_hull(pts);
  std::set<Point2D> input(pts.begin(), pts.end());
  for (const auto& v : h.vertices) EXPECT_TRUE(input.count(v));
  for (std::size_t i = 0; i < h.size(); ++i)
    for (const auto& p : pts) ASSERT_GE(oracle::turn(h[i], h.next(i), p), -1e-12);
}

TEST(ConvexHull, Degenerate) {
  EXPECT_THROW(convex_hull(std::vector<Point2D>{{0, 0}, {1, 1}, {2, 2}}), DegenerateInput);
  EXPECT_THROW(convex_hull(std::vector<Point2D>{{0, 0}, {1, 1}}), DegenerateInput);
}

TEST(PolygonContains, UnitSquareCases) {
  const auto sq = unit_square();
  EXPECT_TRUE(polygon_contains_point(sq, {0.5, 0.5}));
  EXPECT_FALSE(polygon_contains_point(sq, {2, 2}));
  EXPECT_TRUE(polygon_contains_point(sq, {1.0, 0.5}));
  EXPECT_TRUE(polygon_contains_point(sq, {0.0, 0.0}));
  EXPECT_FALSE(polygon_contains_point(sq, {1.0 + 1e-6, 0.5}));
}

TEST(PolygonContains, AgreesWithWindingNumber) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    auto poly = oracle::random_star_polygon(rng, {0, 0}, 0.3, 1.5, 5 + trial % 20);
    for (int k = 0; k < 200; ++k) {
      Point2D p{u(rng), u(rng)};
      ASSERT_EQ(polygon_contains_point(poly, p), oracle::contains(poly.vertices, p));
    }
  }
}

TEST(PolygonArea, KnownShapes) {
  EXPECT_DOUBLE_EQ(polygon_area(unit_square()), 1.0);
  EXPECT_DOUBLE_EQ(polygon_area(Polygon{{{0, 0}, {1, 0}, {0, 1}}}), 0.5);
  Polygon ngon;
  for (int i = 0; i < 64; ++i) {
    const double a = 2 * std::numbers::pi * i / 64;
    ngon.vertices.push_back({std::cos(a), std::sin(a)});
  }
  EXPECT_NEAR(polygon_area(ngon), 32.0 * std::sin(2 * std::numbers::pi / 64), 1e-6);
}

TEST(PolygonsOverlap, NamedCases) {
  EXPECT_FALSE(polygons_overlap(unit_square(), rect(10, 10, 11, 11)));
  EXPECT_TRUE(polygons_overlap(rect(0, 0, 10, 10), rect(4, 4, 5, 5)));
  EXPECT_TRUE(polygons_overlap(rect(4, 4, 5, 5), rect(0, 0, 10, 10)));
  const auto horiz = rect(-3, -1, 3, 1);
  const auto vert = rect(-1, -3, 1, 3);
  EXPECT_TRUE(polygons_overlap(horiz, vert));
  EXPECT_EQ(oracle::overlap(horiz.vertices, vert.vertices), true);
  // touching along an edge and at a single corner both count
  EXPECT_TRUE(polygons_overlap(unit_square(), rect(1, 0, 2, 1)));
  EXPECT_TRUE(polygons_overlap(unit_square(), rect(1, 1, 2, 2)));
  EXPECT_FALSE(polygons_overlap(unit_square(), rect(1.001, 0, 2, 1)));
}

TEST(PolygonsOverlap, AgreesWithBruteForceOnRandomPairs) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> c(-3, 3);
  int positives = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = oracle::random_star_polygon(rng, {c(rng), c(rng)}, 0.2, 1.5, 3 + trial % 17);
    auto b = oracle::random_star_polygon(rng, {c(rng), c(rng)}, 0.2, 1.5, 3 + (trial * 7) % 23);
    const bool expected = oracle::overlap(a.vertices, b.vertices);
    positives += expected;
    ASSERT_EQ(polygons_overlap(a, b), expected) << "trial " << trial;
    ASSERT_EQ(polygons_overlap(b, a), expected) << "trial " << trial;
  }
  // both branches exercised
  EXPECT_GT(positives, 100);
  EXPECT_LT(positives, 900);
}

TEST(ChiShape, UnitSquareLambdaOneIsTheSquare) {
  std::vector<Point2D> pts{{1, 1}, {0, 0}, {0, 1}, {1, 0}};
  EXPECT_EQ(chi_shape(pts, 1.0), unit_square());
}

TEST(ChiShape, LambdaOneMatchesConvexHull) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = trial % 2 ? oracle::random_disc(rng, 20 + trial * 3, {0, 0}, 5) : oracle::random_box(rng, 20 + trial, 0, 0, 4, 1);
    EXPECT_EQ(chi_shape(pts, 1.0), convex_hull(pts)) << "trial " << trial;
  }
}

TEST(ChiShape, CShapeIsNonConvexAndContainsAllPoints) {
  std::mt19937_64 rng(2024);
  auto pts = oracle::c_shape(rng, 500);
  const auto poly = chi_shape(pts, 0.1);
  const auto hull = convex_hull(pts);
  EXPECT_LT(oracle::shoelace(poly.vertices), oracle::shoelace(hull.vertices));
  for (const auto& p : pts) ASSERT_TRUE(oracle::contains(poly.vertices, p));
  EXPECT_TRUE(oracle::simple(poly.vertices));
  // the 90 degree gap is carved out
  EXPECT_LT(oracle::shoelace(poly.vertices), 0.8 * oracle::shoelace(hull.vertices));
}

TEST(ChiShape, PropertiesOverRandomSetsAndLambdas) {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point2D> pts = trial % 3 == 0   ? oracle::c_shape(rng, 60 + trial)
                               : trial % 3 == 1 ? oracle::random_disc(rng, 40 + trial, {1, 1}, 3)
                                                : oracle::random_box(rng, 30 + trial, 0, 0, 10, 2);
    const double l = lam(rng);
    const auto poly = chi_shape(pts, l);
    EXPECT_GT(signed_area(poly.vertices), 0.0);
    EXPECT_TRUE(oracle::simple(poly.vertices)) << "trial " << trial;
    for (const auto& p : pts) ASSERT_TRUE(oracle::contains(poly.vertices, p)) << "trial " << trial;
  }
}

TEST(ChiShape, AreaIsMonotoneInLambda) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = trial % 2 ? oracle::c_shape(rng, 150) : oracle::random_disc(rng, 150, {0, 0}, 1);
    const auto tri = delaunay_triangulate(pts);
    double prev = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double a = oracle::shoelace(chi_shape(tri, i / 20.0).vertices);
      EXPECT_GE(a, prev - 1e-12) << "trial " << trial << " step " << i;
      prev = a;
    }
  }
}

TEST(ChiShape, RejectsBadLambdaAndDegenerateInput) {
  std::vector<Point2D> pts{{0, 0}, {1, 0}, {0, 1}};
  EXPECT_THROW(chi_shape(pts, -0.1), Error);
  EXPECT_THROW(chi_shape(pts, 1.5), Error);
  EXPECT_THROW(chi_shape(std::vector<Point2D>{{0, 0}, {1, 1}, {2, 2}}, 0.3), DegenerateInput);
}
