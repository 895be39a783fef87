#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "usynth/geometry.hpp"
#include "usynth/semantic.hpp"

namespace usynth {

struct Color {
  double r = 0.5, g = 0.5, b = 0.5;
  bool operator==(const Color&) const = default;
};

// Indexed triangle soup with per-triangle semantics. One mesh is one scene
// entity; annotatable entities (cars, cyclists, pedestrians) carry a nonzero
// instance id, everything else 0.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<ClassId> triClass;   // parallel to triangles
  std::vector<Color> triAlbedo;    // parallel to triangles
  std::uint32_t instanceId = 0;

  std::size_t TriangleCount() const { return triangles.size(); }
  bool operator==(const Mesh&) const = default;
};

// Accumulates triangles with exact-coordinate vertex dedup so shared edges
// share indices (the watertightness checks rely on this).
class MeshBuilder {
 public:
  std::uint32_t AddVertex(const Vec3& p);
  void AddTriangle(const Vec3& a, const Vec3& b, const Vec3& c, ClassId cls, Color albedo);
  void AddTriangleIndexed(std::uint32_t a, std::uint32_t b, std::uint32_t c, ClassId cls,
                          Color albedo);

  // Walls + top cap over the polygon footprint, open bottom. Height 0 emits
  // just the cap.
  void AddPrism(const Polygon2& footprint, double z0, double height, ClassId cls, Color albedo);
  void AddQuad(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, ClassId cls,
               Color albedo);
  // Axis-aligned box [min, max], all six faces.
  void AddBox(const Vec3& min, const Vec3& max, ClassId cls, Color albedo);
  void AddCylinder(Vec2 center, double z0, double radius, double height, int segments,
                   ClassId cls, Color albedo);
  void AddCone(Vec2 center, double z0, double radius, double height, int segments, ClassId cls,
               Color albedo);

  Mesh Take(std::uint32_t instanceId = 0);
  bool Empty() const { return mesh_.triangles.empty(); }

 private:
  struct VertexKey {
    double x, y, z;
    bool operator==(const VertexKey&) const = default;
  };
  struct VertexKeyHash {
    std::size_t operator()(const VertexKey& k) const;
  };

  Mesh mesh_;
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> index_;
};

// Axis-aligned bounds of a mesh in its local frame.
struct Aabb3 {
  Vec3 min{1e300, 1e300, 1e300};
  Vec3 max{-1e300, -1e300, -1e300};
  void Grow(const Vec3& p)
  {
    min.x = std::min(min.x, p.x);
    min.y = std::min(min.y, p.y);
    min.z = std::min(min.z, p.z);
    max.x = std::max(max.x, p.x);
    max.y = std::max(max.y, p.y);
    max.z = std::max(max.z, p.z);
  }
  std::array<Vec3, 8> Corners() const
  {
    return {Vec3{min.x, min.y, min.z}, Vec3{max.x, min.y, min.z}, Vec3{min.x, max.y, min.z},
            Vec3{max.x, max.y, min.z}, Vec3{min.x, min.y, max.z}, Vec3{max.x, min.y, max.z},
            Vec3{min.x, max.y, max.z}, Vec3{max.x, max.y, max.z}};
  }
};

Aabb3 MeshBounds(const Mesh& mesh);

}  // namespace usynth
