#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace usynth {

constexpr double kPi = 3.14159265358979323846;

inline double DegToRad(double deg) { return deg * (kPi / 180.0); }
inline double RadToDeg(double rad) { return rad * (180.0 / kPi); }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;
};

inline double Dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double Cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double Length(Vec2 v) { return std::sqrt(Dot(v, v)); }
inline Vec2 Normalized(Vec2 v)
{
  const double len = Length(v);
  return len > 0.0 ? Vec2{v.x / len, v.y / len} : Vec2{0.0, 0.0};
}
// 90 degree counterclockwise turn (left of travel direction in x-east/y-north).
inline Vec2 PerpLeft(Vec2 v) { return {-v.y, v.x}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Vec3&) const = default;
};

inline double Dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 Cross(const Vec3& a, const Vec3& b)
{
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double Length(const Vec3& v) { return std::sqrt(Dot(v, v)); }
inline Vec3 Normalized(const Vec3& v)
{
  const double len = Length(v);
  return len > 0.0 ? v * (1.0 / len) : Vec3{};
}

// Rigid pose restricted to what scene nodes need: translation plus yaw about +z.
struct NodePose {
  Vec3 translation;
  double yaw = 0.0;  // radians, counterclockwise about +z

  Vec3 Apply(const Vec3& p) const
  {
    const double c = std::cos(yaw), s = std::sin(yaw);
    return {c * p.x - s * p.y + translation.x, s * p.x + c * p.y + translation.y,
            p.z + translation.z};
  }
  // Inverse transform of Apply.
  Vec3 ApplyInverse(const Vec3& p) const
  {
    const double c = std::cos(yaw), s = std::sin(yaw);
    const Vec3 d = p - translation;
    return {c * d.x + s * d.y, -s * d.x + c * d.y, d.z};
  }
  static NodePose Identity() { return {}; }
};

using Polyline2 = std::vector<Vec2>;
using Polygon2 = std::vector<Vec2>;  // closed implicitly, no repeated last point

double PolylineLength(const Polyline2& pts);

// Point at the given arc length from the start, clamped to [0, length].
Vec2 PointAtArcLength(const Polyline2& pts, double s);

// Unit tangent of the segment containing arc length s (last segment beyond the end).
Vec2 TangentAtArcLength(const Polyline2& pts, double s);

// Offsets a polyline sideways. Positive offset is to the right of the travel
// direction, negative to the left. Interior vertices use miter joins (miter
// length clamped to 4x the offset). Throws on polylines of length zero.
Polyline2 OffsetPolyline(const Polyline2& pts, double offset);

// Twice the signed area; positive for counterclockwise polygons.
double SignedArea2(const Polygon2& poly);

bool IsCounterClockwise(const Polygon2& poly);

// True if no two non-adjacent edges intersect and no edge degenerates.
bool IsSimplePolygon(const Polygon2& poly);

Vec2 PolygonCentroid(const Polygon2& poly);

struct Aabb2 {
  Vec2 min{1e300, 1e300};
  Vec2 max{-1e300, -1e300};
  void Grow(Vec2 p)
  {
    min.x = std::min(min.x, p.x);
    min.y = std::min(min.y, p.y);
    max.x = std::max(max.x, p.x);
    max.y = std::max(max.y, p.y);
  }
  Vec2 Extent() const { return max - min; }
};

Aabb2 PolygonBounds(const Polygon2& poly);

// Clips the polygon against the half plane dot(p, axis) <= bound (axis is a
// unit direction). Result may be empty.
Polygon2 ClipPolygonHalfPlane(const Polygon2& poly, Vec2 axisDir, double bound, bool keepBelow);

// Shrinks a convex polygon inward by d; returns empty when the inset vanishes.
Polygon2 InsetConvexPolygon(const Polygon2& poly, double d);

// Ear-clipping triangulation of a simple polygon (either orientation).
// Returns vertex index triples with counterclockwise winding.
std::vector<std::array<int, 3>> TriangulatePolygon(const Polygon2& poly);

}  // namespace usynth
