#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "usynth/camera.hpp"
#include "usynth/gbuffer.hpp"
#include "usynth/image.hpp"
#include "usynth/rasterizer.hpp"
#include "usynth/scene.hpp"

namespace usynth {

// Screen velocity in pixels per frame at every pixel of the current frame.
// Invalid pixels (sky, surface not visible or absent in the previous frame)
// carry (0, 0).
struct FlowField {
  int width = 0;
  int height = 0;
  std::vector<float> u;
  std::vector<float> v;
  std::vector<std::uint8_t> valid;

  static FlowField Create(int w, int h)
  {
    FlowField f;
    f.width = w;
    f.height = h;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    f.u.assign(n, 0.0f);
    f.v.assign(n, 0.0f);
    f.valid.assign(n, 0);
    return f;
  }
  bool operator==(const FlowField&) const = default;
};

struct BoxAnnotation {
  int frame = 0;
  std::uint32_t trackId = 0;  // equals the instance id
  ClassId classId = ClassId::kCar;
  double xMin = 0.0, yMin = 0.0, xMax = 0.0, yMax = 0.0;  // pixels, clipped
  double occlusionRate = 0.0;
  bool truncated = false;

  double Width() const { return xMax - xMin; }
  double Height() const { return yMax - yMin; }
};

// The four annotation rules: corner projection, boundary clipping with a
// truncation flag, the 15 x 10 px minimum size, and the occlusion cutoff.
struct BoxRules {
  double minWidth = 15.0;
  double minHeight = 10.0;
  double occlusionThreshold = 0.75;  // boxes with rate > threshold are dropped
};

// Palette-indexed class id plane.
ImageGray8 SemanticIdImage(const GBuffer& g);

// Palette-colored view of the class plane; unaffected by illumination.
ImageRgb8 SemanticRgbImage(const GBuffer& g);

// Instance ids for annotatable classes, 0 elsewhere.
ImageGray16 InstanceImage(const GBuffer& g);

// Deterministic bijection from instance/track id to a display color.
Rgb8 InstanceDisplayColor(std::uint32_t id);

// Normalized depth d = 1 - near/z (sky = 1): in [0, 1], nonlinear, monotone.
ImageGrayF DepthImage(const GBuffer& g, double nearPlane);

// Geometric optical flow: each visible surface point is moved by the inverse
// of its node's rigid motion and reprojected through the previous camera;
// flow is (current pixel center - previous projection). Throws when dt <= 0.
FlowField ComputeFlowField(const GBuffer& gNow, const std::vector<RenderNode>& nodes,
                           const Camera& camNow, const Camera& camPrev, double dt);

struct FlowResidualStats {
  double median = 0.0;
  double p90 = 0.0;
  std::size_t samples = 0;
};

// Checks the brightness-constancy relation -dE/dt = grad(E) . w on grayscale
// conversions of two frames: the per-pixel residual |dE/dt + grad(E) . w|
// aggregated over valid pixels whose spatial gradient exceeds the texture
// threshold.
FlowResidualStats VerifyFlowConstraint(const ImageRgb8& framePrev, const ImageRgb8& frameNext,
                                       const FlowField& flow, double textureThreshold = 0.02);

// 1 - visible / solo pixel count; off-screen instances rate 1.
double OcclusionRate(std::uint32_t instanceId, const std::vector<RenderNode>& nodes,
                     const Camera& cam, const GBuffer& fullFrame, SoloCoverageCounter& counter);

// Applies the four rules to every annotatable instance in the snapshot.
std::vector<BoxAnnotation> DetectionBoxes(const std::vector<RenderNode>& nodes,
                                          const GBuffer& g, const Camera& cam,
                                          const BoxRules& rules, int frameIndex,
                                          SoloCoverageCounter& counter);

struct TrackSegment {
  int firstFrame = 0;
  int lastFrame = 0;  // inclusive
};

struct Track {
  std::uint32_t trackId = 0;
  ClassId classId = ClassId::kCar;
  Rgb8 displayColor;
  std::vector<TrackSegment> segments;  // maximal frame-consecutive runs
};

using TrackTable = std::map<std::uint32_t, Track>;

// Groups per-frame boxes by track id into maximal consecutive segments.
TrackTable BuildTracks(const std::vector<std::vector<BoxAnnotation>>& boxesPerFrame);

}  // namespace usynth
