#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "usynth/geometry.hpp"
#include "usynth/semantic.hpp"

namespace usynth {

constexpr std::uint32_t kNoNode = 0xffffffffu;

// Per-pixel geometric frame state produced by rasterization. Sky pixels have
// class kSky, instance 0, node kNoNode, and infinite depth.
struct GBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> classId;
  std::vector<std::uint32_t> instanceId;
  std::vector<std::uint32_t> nodeIndex;
  std::vector<double> depth;     // camera-space z in meters, +inf for sky
  std::vector<Vec3> worldPos;
  std::vector<Vec3> albedo;
  std::vector<Vec3> normal;      // unit, oriented toward the camera

  void Reset(int w, int h)
  {
    width = w;
    height = h;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    classId.assign(n, static_cast<std::uint8_t>(ClassId::kSky));
    instanceId.assign(n, 0);
    nodeIndex.assign(n, kNoNode);
    depth.assign(n, std::numeric_limits<double>::infinity());
    worldPos.assign(n, Vec3{});
    albedo.assign(n, Vec3{});
    normal.assign(n, Vec3{});
  }

  std::size_t PixelCount() const { return static_cast<std::size_t>(width) * height; }
  bool IsSky(std::size_t i) const { return nodeIndex[i] == kNoNode; }
};

}  // namespace usynth
