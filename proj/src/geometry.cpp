#include "usynth/geometry.hpp"

#include "usynth/error.hpp"

namespace usynth {

double PolylineLength(const Polyline2& pts)
{
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += Length(pts[i] - pts[i - 1]);
  return len;
}

Vec2 PointAtArcLength(const Polyline2& pts, double s)
{
  if (pts.empty()) return {};
  if (s <= 0.0) return pts.front();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg = Length(pts[i] - pts[i - 1]);
    if (s <= seg && seg > 0.0) {
      const double t = s / seg;
      return pts[i - 1] + (pts[i] - pts[i - 1]) * t;
    }
    s -= seg;
  }
  return pts.back();
}

Vec2 TangentAtArcLength(const Polyline2& pts, double s)
{
  if (pts.size() < 2) return {1.0, 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg = Length(pts[i] - pts[i - 1]);
    if (s <= seg && seg > 0.0) return Normalized(pts[i] - pts[i - 1]);
    s -= seg;
  }
  // Beyond the end: direction of the last non-degenerate segment.
  for (std::size_t i = pts.size() - 1; i >= 1; --i) {
    const Vec2 d = pts[i] - pts[i - 1];
    if (Length(d) > 0.0) return Normalized(d);
  }
  return {1.0, 0.0};
}

Polyline2 OffsetPolyline(const Polyline2& pts, double offset)
{
  if (pts.size() < 2 || PolylineLength(pts) <= 0.0)
    throw ValidationError("cannot offset a degenerate polyline");
  if (offset == 0.0) return pts;

  // Right normal of each segment (offset > 0 moves right of travel).
  std::vector<Vec2> segNormal;
  segNormal.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vec2 d = pts[i] - pts[i - 1];
    if (Length(d) == 0.0) {
      segNormal.push_back(segNormal.empty() ? Vec2{0.0, -1.0} : segNormal.back());
    } else {
      const Vec2 left = PerpLeft(Normalized(d));
      segNormal.push_back(left * -1.0);
    }
  }

  Polyline2 out;
  out.reserve(pts.size());
  const double maxMiter = 4.0 * std::abs(offset);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Vec2 n;
    if (i == 0) {
      n = segNormal.front();
    } else if (i == pts.size() - 1) {
      n = segNormal.back();
    } else {
      n = Normalized(segNormal[i - 1] + segNormal[i]);
      if (Length(n) == 0.0) n = segNormal[i];  // 180 degree turn, fall back
      // Miter scale keeps the offset distance perpendicular to both segments.
      const double cosHalf = Dot(n, segNormal[i]);
      if (cosHalf > 1e-6) {
        double scale = 1.0 / cosHalf;
        scale = std::min(scale, maxMiter / std::abs(offset));
        n = n * scale;
      }
    }
    out.push_back(pts[i] + n * offset);
  }
  return out;
}

double SignedArea2(const Polygon2& poly)
{
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    a += Cross(p, q);
  }
  return a;
}

bool IsCounterClockwise(const Polygon2& poly) { return SignedArea2(poly) > 0.0; }

namespace {

bool SegmentsIntersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d)
{
  const double d1 = Cross(b - a, c - a);
  const double d2 = Cross(b - a, d - a);
  const double d3 = Cross(d - c, a - c);
  const double d4 = Cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

bool IsSimplePolygon(const Polygon2& poly)
{
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i] == poly[(i + 1) % n]) return false;  // degenerate edge
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share an endpoint).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (SegmentsIntersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

Vec2 PolygonCentroid(const Polygon2& poly)
{
  double a = 0.0;
  Vec2 c{};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    const double w = Cross(p, q);
    a += w;
    c = c + (p + q) * w;
  }
  if (std::abs(a) < 1e-12) {
    // Degenerate: average of vertices.
    Vec2 m{};
    for (const Vec2& p : poly) m = m + p;
    return m * (1.0 / static_cast<double>(poly.size()));
  }
  return c * (1.0 / (3.0 * a));
}

Aabb2 PolygonBounds(const Polygon2& poly)
{
  Aabb2 b;
  for (const Vec2& p : poly) b.Grow(p);
  return b;
}

Polygon2 ClipPolygonHalfPlane(const Polygon2& poly, Vec2 axisDir, double bound, bool keepBelow)
{
  Polygon2 out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  auto side = [&](Vec2 p) {
    const double d = Dot(p, axisDir) - bound;
    return keepBelow ? -d : d;  // >= 0 means keep
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 cur = poly[i];
    const Vec2 nxt = poly[(i + 1) % n];
    const double sc = side(cur);
    const double sn = side(nxt);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + (nxt - cur) * t);
    }
  }
  // Drop consecutive duplicates introduced by clipping through vertices.
  Polygon2 dedup;
  for (const Vec2& p : out) {
    if (dedup.empty() || Length(p - dedup.back()) > 1e-12) dedup.push_back(p);
  }
  while (dedup.size() > 1 && Length(dedup.front() - dedup.back()) <= 1e-12) dedup.pop_back();
  if (dedup.size() < 3) dedup.clear();
  return dedup;
}

Polygon2 InsetConvexPolygon(const Polygon2& poly, double d)
{
  Polygon2 cur = poly;
  if (!IsCounterClockwise(cur)) std::reverse(cur.begin(), cur.end());
  const Polygon2 edges = cur;
  const std::size_t n = edges.size();
  for (std::size_t i = 0; i < n && !cur.empty(); ++i) {
    const Vec2 a = edges[i];
    const Vec2 b = edges[(i + 1) % n];
    const Vec2 dir = Normalized(b - a);
    if (Length(b - a) == 0.0) continue;
    // Inward normal of a CCW edge is the left perpendicular.
    const Vec2 inward = PerpLeft(dir);
    // Keep the side dot(p, inward) >= dot(a, inward) + d.
    cur = ClipPolygonHalfPlane(cur, inward, Dot(a, inward) + d, /*keepBelow=*/false);
  }
  return cur;
}

namespace {

bool PointInTriangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c)
{
  const double d1 = Cross(b - a, p - a);
  const double d2 = Cross(c - b, p - b);
  const double d3 = Cross(a - c, p - c);
  return d1 >= 0 && d2 >= 0 && d3 >= 0;
}

}  // namespace

std::vector<std::array<int, 3>> TriangulatePolygon(const Polygon2& poly)
{
  std::vector<std::array<int, 3>> tris;
  const std::size_t n = poly.size();
  if (n < 3) return tris;

  std::vector<int> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
  if (!IsCounterClockwise(poly)) std::reverse(idx.begin(), idx.end());

  std::size_t guard = 0;
  while (idx.size() > 3 && guard < n * n) {
    bool clipped = false;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const int ia = idx[(i + idx.size() - 1) % idx.size()];
      const int ib = idx[i];
      const int ic = idx[(i + 1) % idx.size()];
      const Vec2 a = poly[ia], b = poly[ib], c = poly[ic];
      if (Cross(b - a, c - a) <= 1e-12) continue;  // reflex or degenerate corner
      bool earOk = true;
      for (const int j : idx) {
        if (j == ia || j == ib || j == ic) continue;
        if (PointInTriangle(poly[j], a, b, c)) {
          earOk = false;
          break;
        }
      }
      if (!earOk) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped) break;  // numerically stuck; emit what we have plus a fan
    ++guard;
  }
  if (idx.size() == 3) {
    tris.push_back({idx[0], idx[1], idx[2]});
  } else if (idx.size() > 3) {
    for (std::size_t i = 1; i + 1 < idx.size(); ++i) tris.push_back({idx[0], idx[i], idx[i + 1]});
  }
  return tris;
}

}  // namespace usynth
