#include <algorithm>

#include "usynth/scene.hpp"

namespace usynth {

namespace {

constexpr double kSidewalkWidth = 2.0;
const Color kAsphalt{0.22, 0.22, 0.24};
const Color kPavement{0.55, 0.53, 0.5};

// Quad strip between two offset polylines of the same vertex count.
void AddRibbon(MeshBuilder& b, const Polyline2& left, const Polyline2& right, ClassId cls,
               Color albedo)
{
  for (std::size_t i = 1; i < left.size() && i < right.size(); ++i) {
    b.AddQuad({left[i - 1].x, left[i - 1].y, 0.0}, {right[i - 1].x, right[i - 1].y, 0.0},
              {right[i].x, right[i].y, 0.0}, {left[i].x, left[i].y, 0.0}, cls, albedo);
  }
}

}  // namespace

std::vector<Mesh> GenerateRoadMeshes(const RoadNetwork& net)
{
  std::vector<Mesh> meshes;

  for (const RoadSegment& seg : net.segments) {
    const double half = seg.Width() / 2.0;
    MeshBuilder road;
    AddRibbon(road, OffsetPolyline(seg.centerline, -half), OffsetPolyline(seg.centerline, +half),
              ClassId::kRoad, kAsphalt);
    meshes.push_back(road.Take());

    for (const double side : {-1.0, +1.0}) {
      MeshBuilder walk;
      AddRibbon(walk, OffsetPolyline(seg.centerline, side * half),
                OffsetPolyline(seg.centerline, side * (half + kSidewalkWidth)),
                ClassId::kSidewalk, kPavement);
      meshes.push_back(walk.Take());
    }
  }

  // Junction discs sized to the widest incident road.
  for (const Junction& j : net.junctions) {
    double radius = 0.0;
    for (const std::int64_t id : j.segmentIds) {
      const auto it = std::find_if(net.segments.begin(), net.segments.end(),
                                   [&](const RoadSegment& s) { return s.id == id; });
      if (it != net.segments.end()) radius = std::max(radius, it->Width() / 2.0);
    }
    if (radius <= 0.0) continue;
    Polygon2 disc;
    constexpr int kSides = 16;
    for (int i = 0; i < kSides; ++i) {
      const double a = 2.0 * kPi * i / kSides;
      disc.push_back({j.position.x + radius * std::cos(a), j.position.y + radius * std::sin(a)});
    }
    MeshBuilder b;
    b.AddPrism(disc, 0.0, 0.0, ClassId::kRoad, kAsphalt);
    meshes.push_back(b.Take());
  }

  return meshes;
}

}  // namespace usynth
