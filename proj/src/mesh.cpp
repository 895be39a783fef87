#include "usynth/mesh.hpp"

#include <cstring>

#include "usynth/rng.hpp"

namespace usynth {

std::size_t MeshBuilder::VertexKeyHash::operator()(const VertexKey& k) const
{
  std::uint64_t bits[3];
  std::memcpy(bits, &k, sizeof(bits));
  return static_cast<std::size_t>(Mix64(HashCombine(HashCombine(bits[0], bits[1]), bits[2])));
}

std::uint32_t MeshBuilder::AddVertex(const Vec3& p)
{
  const VertexKey key{p.x, p.y, p.z};
  const auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(mesh_.vertices.size());
  mesh_.vertices.push_back(p);
  index_.emplace(key, id);
  return id;
}

void MeshBuilder::AddTriangleIndexed(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                                     ClassId cls, Color albedo)
{
  if (a == b || b == c || a == c) return;
  const Vec3 n = Cross(mesh_.vertices[b] - mesh_.vertices[a], mesh_.vertices[c] - mesh_.vertices[a]);
  if (Dot(n, n) == 0.0) return;  // zero area
  mesh_.triangles.push_back({a, b, c});
  mesh_.triClass.push_back(cls);
  mesh_.triAlbedo.push_back(albedo);
}

void MeshBuilder::AddTriangle(const Vec3& a, const Vec3& b, const Vec3& c, ClassId cls,
                              Color albedo)
{
  AddTriangleIndexed(AddVertex(a), AddVertex(b), AddVertex(c), cls, albedo);
}

void MeshBuilder::AddQuad(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, ClassId cls,
                          Color albedo)
{
  AddTriangle(a, b, c, cls, albedo);
  AddTriangle(a, c, d, cls, albedo);
}

void MeshBuilder::AddPrism(const Polygon2& footprint, double z0, double height, ClassId cls,
                           Color albedo)
{
  if (footprint.size() < 3) return;
  Polygon2 poly = footprint;
  if (!IsCounterClockwise(poly)) std::reverse(poly.begin(), poly.end());
  const double z1 = z0 + height;

  if (height > 0.0) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2 p = poly[i];
      const Vec2 q = poly[(i + 1) % poly.size()];
      // Outward-facing wall for a CCW footprint.
      AddQuad({p.x, p.y, z0}, {q.x, q.y, z0}, {q.x, q.y, z1}, {p.x, p.y, z1}, cls, albedo);
    }
  }
  for (const auto& t : TriangulatePolygon(poly)) {
    AddTriangle({poly[t[0]].x, poly[t[0]].y, z1}, {poly[t[1]].x, poly[t[1]].y, z1},
                {poly[t[2]].x, poly[t[2]].y, z1}, cls, albedo);
  }
}

void MeshBuilder::AddBox(const Vec3& mn, const Vec3& mx, ClassId cls, Color albedo)
{
  const Vec3 a{mn.x, mn.y, mn.z}, b{mx.x, mn.y, mn.z}, c{mx.x, mx.y, mn.z}, d{mn.x, mx.y, mn.z};
  const Vec3 e{mn.x, mn.y, mx.z}, f{mx.x, mn.y, mx.z}, g{mx.x, mx.y, mx.z}, h{mn.x, mx.y, mx.z};
  AddQuad(d, c, b, a, cls, albedo);  // bottom
  AddQuad(e, f, g, h, cls, albedo);  // top
  AddQuad(a, b, f, e, cls, albedo);  // south
  AddQuad(c, d, h, g, cls, albedo);  // north
  AddQuad(b, c, g, f, cls, albedo);  // east
  AddQuad(d, a, e, h, cls, albedo);  // west
}

void MeshBuilder::AddCylinder(Vec2 center, double z0, double radius, double height, int segments,
                              ClassId cls, Color albedo)
{
  if (segments < 3 || radius <= 0.0 || height <= 0.0) return;
  const double z1 = z0 + height;
  const std::uint32_t topCenter = AddVertex({center.x, center.y, z1});
  for (int i = 0; i < segments; ++i) {
    const double a0 = 2.0 * kPi * i / segments;
    const double a1 = 2.0 * kPi * (i + 1) / segments;
    const Vec2 p{center.x + radius * std::cos(a0), center.y + radius * std::sin(a0)};
    const Vec2 q{center.x + radius * std::cos(a1), center.y + radius * std::sin(a1)};
    AddQuad({p.x, p.y, z0}, {q.x, q.y, z0}, {q.x, q.y, z1}, {p.x, p.y, z1}, cls, albedo);
    AddTriangleIndexed(AddVertex({p.x, p.y, z1}), AddVertex({q.x, q.y, z1}), topCenter, cls,
                       albedo);
  }
}

void MeshBuilder::AddCone(Vec2 center, double z0, double radius, double height, int segments,
                          ClassId cls, Color albedo)
{
  if (segments < 3 || radius <= 0.0 || height <= 0.0) return;
  const std::uint32_t apex = AddVertex({center.x, center.y, z0 + height});
  const std::uint32_t base = AddVertex({center.x, center.y, z0});
  for (int i = 0; i < segments; ++i) {
    const double a0 = 2.0 * kPi * i / segments;
    const double a1 = 2.0 * kPi * (i + 1) / segments;
    const std::uint32_t p = AddVertex({center.x + radius * std::cos(a0),
                                       center.y + radius * std::sin(a0), z0});
    const std::uint32_t q = AddVertex({center.x + radius * std::cos(a1),
                                       center.y + radius * std::sin(a1), z0});
    AddTriangleIndexed(p, q, apex, cls, albedo);
    AddTriangleIndexed(q, p, base, cls, albedo);
  }
}

Mesh MeshBuilder::Take(std::uint32_t instanceId)
{
  Mesh out = std::move(mesh_);
  out.instanceId = instanceId;
  mesh_ = Mesh{};
  index_.clear();
  return out;
}

Aabb3 MeshBounds(const Mesh& mesh)
{
  Aabb3 b;
  for (const Vec3& v : mesh.vertices) b.Grow(v);
  return b;
}

}  // namespace usynth
