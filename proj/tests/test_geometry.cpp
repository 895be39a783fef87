#include <doctest.h>

#include "usynth/error.hpp"
#include "usynth/geometry.hpp"
#include "usynth/rng.hpp"

using namespace usynth;

TEST_CASE("arc length sampling walks the polyline")
{
  const Polyline2 line = {{0, 0}, {10, 0}, {10, 10}};
  CHECK(PolylineLength(line) == doctest::Approx(20.0));
  const Vec2 mid = PointAtArcLength(line, 5.0);
  CHECK(mid.x == doctest::Approx(5.0));
  CHECK(mid.y == doctest::Approx(0.0));
  const Vec2 corner = PointAtArcLength(line, 15.0);
  CHECK(corner.x == doctest::Approx(10.0));
  CHECK(corner.y == doctest::Approx(5.0));
  // Clamped beyond the end.
  const Vec2 past = PointAtArcLength(line, 50.0);
  CHECK(past.x == doctest::Approx(10.0));
  CHECK(past.y == doctest::Approx(10.0));
  const Vec2 tangentPast = TangentAtArcLength(line, 50.0);
  CHECK(tangentPast.x == doctest::Approx(0.0));
  CHECK(tangentPast.y == doctest::Approx(1.0));
}

TEST_CASE("polyline offset moves right of travel")
{
  const Polyline2 east = {{0, 0}, {100, 0}};
  const Polyline2 right = OffsetPolyline(east, 2.0);
  CHECK(right[0].y == doctest::Approx(-2.0));  // right of +x travel is -y
  const Polyline2 left = OffsetPolyline(east, -2.0);
  CHECK(left[0].y == doctest::Approx(2.0));

  // 90 degree corner: miter join keeps both segments at the offset distance.
  const Polyline2 bend = {{0, 0}, {10, 0}, {10, 10}};
  const Polyline2 off = OffsetPolyline(bend, 1.0);
  CHECK(off[1].x == doctest::Approx(11.0));
  CHECK(off[1].y == doctest::Approx(-1.0));

  CHECK_THROWS_AS(OffsetPolyline({{1, 1}, {1, 1}}, 1.0), ValidationError);
}

TEST_CASE("polygon predicates")
{
  const Polygon2 ccw = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  CHECK(IsCounterClockwise(ccw));
  CHECK(SignedArea2(ccw) == doctest::Approx(32.0));
  CHECK(IsSimplePolygon(ccw));

  const Polygon2 bowtie = {{0, 0}, {4, 4}, {4, 0}, {0, 4}};
  CHECK_FALSE(IsSimplePolygon(bowtie));

  const Vec2 c = PolygonCentroid(ccw);
  CHECK(c.x == doctest::Approx(2.0));
  CHECK(c.y == doctest::Approx(2.0));
}

TEST_CASE("convex inset shrinks by the distance")
{
  const Polygon2 square = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  const Polygon2 inner = InsetConvexPolygon(square, 2.0);
  REQUIRE(inner.size() == 4);
  const Aabb2 b = PolygonBounds(inner);
  CHECK(b.min.x == doctest::Approx(2.0));
  CHECK(b.max.x == doctest::Approx(8.0));

  CHECK(InsetConvexPolygon(square, 6.0).empty());  // inset vanishes
}

TEST_CASE("triangulation covers the polygon area")
{
  // L-shaped (concave) polygon, area 3 * 1 + 1 * 2 = hand computed 12 - 4 = 8.
  const Polygon2 ell = {{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 3}, {0, 3}};
  const double target = SignedArea2(ell) / 2.0;
  const auto tris = TriangulatePolygon(ell);
  CHECK(tris.size() == ell.size() - 2);
  double area = 0.0;
  for (const auto& t : tris) {
    area += Cross(ell[t[1]] - ell[t[0]], ell[t[2]] - ell[t[0]]) / 2.0;
  }
  CHECK(area == doctest::Approx(target));
}

TEST_CASE("counter rng is pure in its key")
{
  CHECK(RandU64(1, 2, 3) == RandU64(1, 2, 3));
  CHECK(RandU64(1, 2, 3) != RandU64(1, 2, 4));
  CHECK(RandU64(1, 2, 3) != RandU64(2, 2, 3));
  for (int i = 0; i < 1000; ++i) {
    const double u = RandUnit(42, "test"_tag, i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("node pose round trip")
{
  const NodePose pose{{3.0, -2.0, 1.0}, 0.7};
  const Vec3 p{1.5, 2.5, 0.5};
  const Vec3 back = pose.ApplyInverse(pose.Apply(p));
  CHECK(back.x == doctest::Approx(p.x));
  CHECK(back.y == doctest::Approx(p.y));
  CHECK(back.z == doctest::Approx(p.z));
}
