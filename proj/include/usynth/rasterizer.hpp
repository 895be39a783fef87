#pragma once

#include <cstdint>
#include <vector>

#include "usynth/camera.hpp"
#include "usynth/gbuffer.hpp"
#include "usynth/scene.hpp"

namespace usynth {

// Z-buffered software rasterization of the node snapshot into the G-buffer,
// sampling at pixel centers with perspective-correct world positions. The
// image is split into tiles, each owned by one worker, so the result is
// byte-identical for any thread count. Depth ties keep the earlier triangle
// in submission (node, triangle) order.
void Rasterize(const std::vector<RenderNode>& nodes, const Camera& cam, GBuffer& out,
               int threads = 0);

// Counts pixels covered by a single node rendered alone with the same
// camera (self-overlap counted once). Reusable across calls; buffers grow on
// demand. Used for occlusion rates.
class SoloCoverageCounter {
 public:
  int Count(const Mesh& mesh, const NodePose& pose, const Camera& cam);

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

}  // namespace usynth
