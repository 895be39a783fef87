#include "usynth/ground_truth.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "usynth/error.hpp"

namespace usynth {

ImageGray8 SemanticIdImage(const GBuffer& g)
{
  ImageGray8 img = ImageGray8::Create(g.width, g.height);
  std::copy(g.classId.begin(), g.classId.end(), img.data.begin());
  return img;
}

ImageRgb8 SemanticRgbImage(const GBuffer& g)
{
  ImageRgb8 img = ImageRgb8::Create(g.width, g.height);
  for (std::size_t p = 0; p < g.PixelCount(); ++p) {
    const Rgb8 c = PaletteColor(static_cast<ClassId>(g.classId[p]));
    img.data[p * 3 + 0] = c.r;
    img.data[p * 3 + 1] = c.g;
    img.data[p * 3 + 2] = c.b;
  }
  return img;
}

ImageGray16 InstanceImage(const GBuffer& g)
{
  ImageGray16 img = ImageGray16::Create(g.width, g.height);
  for (std::size_t p = 0; p < g.PixelCount(); ++p) {
    if (IsAnnotatable(static_cast<ClassId>(g.classId[p])))
      img.data[p] = static_cast<std::uint16_t>(g.instanceId[p]);
  }
  return img;
}

Rgb8 InstanceDisplayColor(std::uint32_t id)
{
  // Odd multiplier modulo 2^24 permutes the color cube, so distinct ids get
  // distinct colors.
  const std::uint32_t c = (id * 2654435761u) & 0xffffffu;
  return {static_cast<std::uint8_t>(c >> 16), static_cast<std::uint8_t>((c >> 8) & 0xff),
          static_cast<std::uint8_t>(c & 0xff)};
}

ImageGrayF DepthImage(const GBuffer& g, double nearPlane)
{
  ImageGrayF img = ImageGrayF::Create(g.width, g.height);
  for (std::size_t p = 0; p < g.PixelCount(); ++p) {
    if (g.IsSky(p)) {
      img.data[p] = 1.0f;
    } else {
      const double d = 1.0 - nearPlane / std::max(g.depth[p], nearPlane);
      img.data[p] = static_cast<float>(d);
    }
  }
  return img;
}

FlowField ComputeFlowField(const GBuffer& gNow, const std::vector<RenderNode>& nodes,
                           const Camera& camNow, const Camera& camPrev, double dt)
{
  if (dt <= 0.0) throw ValidationError("flow requires a positive frame interval");
  (void)camNow;  // pixel centers of the current frame are the sample points

  FlowField flow = FlowField::Create(gNow.width, gNow.height);
  for (int y = 0; y < gNow.height; ++y) {
    for (int x = 0; x < gNow.width; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * gNow.width + x;
      const std::uint32_t node = gNow.nodeIndex[p];
      if (node == kNoNode) continue;
      if (node >= nodes.size() || !nodes[node].existedPrev) continue;

      // Undo the node's rigid motion to find where this surface point was.
      const Vec3 local = nodes[node].pose.ApplyInverse(gNow.worldPos[p]);
      const Vec3 worldPrev = nodes[node].posePrev.Apply(local);
      const auto proj = camPrev.Project(worldPrev);
      if (!proj) continue;  // behind the previous camera

      flow.u[p] = static_cast<float>((x + 0.5) - proj->u);
      flow.v[p] = static_cast<float>((y + 0.5) - proj->v);
      flow.valid[p] = 1;
    }
  }
  return flow;
}

namespace {

inline double Luma(const std::uint8_t* px)
{
  return (0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]) / 255.0;
}

double Percentile(std::vector<double>& values, double q)
{
  if (values.empty()) return 0.0;
  const std::size_t k =
      std::min(values.size() - 1, static_cast<std::size_t>(q * (values.size() - 1) + 0.5));
  std::nth_element(values.begin(), values.begin() + k, values.end());
  return values[k];
}

}  // namespace

FlowResidualStats VerifyFlowConstraint(const ImageRgb8& framePrev, const ImageRgb8& frameNext,
                                       const FlowField& flow, double textureThreshold)
{
  if (!framePrev.SameSize(flow.width, flow.height) || !frameNext.SameSize(flow.width, flow.height))
    throw ValidationError("flow verification: image and flow dimensions differ");

  const int w = flow.width, h = flow.height;
  ImageGrayF prevL = ImageGrayF::Create(w, h);
  ImageGrayF nextL = ImageGrayF::Create(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      prevL.data[static_cast<std::size_t>(y) * w + x] = static_cast<float>(Luma(framePrev.Pixel(x, y)));
      nextL.data[static_cast<std::size_t>(y) * w + x] = static_cast<float>(Luma(frameNext.Pixel(x, y)));
    }
  }

  std::vector<double> residuals;
  residuals.reserve(flow.u.size());
  auto at = [w](const ImageGrayF& img, int x, int y) {
    return static_cast<double>(img.data[static_cast<std::size_t>(y) * w + x]);
  };

  for (int y = 1; y + 1 < h; ++y) {
    for (int x = 1; x + 1 < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      if (!flow.valid[p]) continue;
      // Central differences averaged over both frames (the flow maps between
      // them, so the mid-point gradient fits the constraint best).
      const double gx = 0.5 * ((at(prevL, x + 1, y) - at(prevL, x - 1, y)) / 2.0 +
                               (at(nextL, x + 1, y) - at(nextL, x - 1, y)) / 2.0);
      const double gy = 0.5 * ((at(prevL, x, y + 1) - at(prevL, x, y - 1)) / 2.0 +
                               (at(nextL, x, y + 1) - at(nextL, x, y - 1)) / 2.0);
      if (std::sqrt(gx * gx + gy * gy) < textureThreshold) continue;
      const double dEdt = at(nextL, x, y) - at(prevL, x, y);
      residuals.push_back(std::abs(dEdt + gx * flow.u[p] + gy * flow.v[p]));
    }
  }

  FlowResidualStats stats;
  stats.samples = residuals.size();
  stats.median = Percentile(residuals, 0.5);
  stats.p90 = Percentile(residuals, 0.9);
  return stats;
}

double OcclusionRate(std::uint32_t instanceId, const std::vector<RenderNode>& nodes,
                     const Camera& cam, const GBuffer& fullFrame, SoloCoverageCounter& counter)
{
  const RenderNode* owner = nullptr;
  for (const RenderNode& node : nodes) {
    if (node.mesh && node.mesh->instanceId == instanceId) {
      owner = &node;
      break;
    }
  }
  if (!owner) return 1.0;

  const int solo = counter.Count(*owner->mesh, owner->pose, cam);
  if (solo == 0) return 1.0;

  std::size_t visible = 0;
  for (std::size_t p = 0; p < fullFrame.PixelCount(); ++p)
    if (fullFrame.instanceId[p] == instanceId) ++visible;

  return 1.0 - static_cast<double>(visible) / static_cast<double>(solo);
}

std::vector<BoxAnnotation> DetectionBoxes(const std::vector<RenderNode>& nodes, const GBuffer& g,
                                          const Camera& cam, const BoxRules& rules,
                                          int frameIndex, SoloCoverageCounter& counter)
{
  // One pass over the frame for all visible-pixel counts.
  std::unordered_map<std::uint32_t, int> visibleCount;
  for (std::size_t p = 0; p < g.PixelCount(); ++p)
    if (g.instanceId[p] != 0) ++visibleCount[g.instanceId[p]];

  std::vector<BoxAnnotation> boxes;
  for (const RenderNode& node : nodes) {
    if (!node.mesh || node.mesh->instanceId == 0) continue;

    // Rule 1: project the 3D bounding box corners.
    const Aabb3 bounds = MeshBounds(*node.mesh);
    double xMin = 1e300, yMin = 1e300, xMax = -1e300, yMax = -1e300;
    int inFront = 0;
    for (const Vec3& corner : bounds.Corners()) {
      const auto proj = cam.Project(node.pose.Apply(corner));
      if (!proj) continue;
      ++inFront;
      xMin = std::min(xMin, proj->u);
      xMax = std::max(xMax, proj->u);
      yMin = std::min(yMin, proj->v);
      yMax = std::max(yMax, proj->v);
    }
    if (inFront == 0) continue;

    // Rule 2: clip to the image, flag truncation, drop fully outside boxes.
    const bool truncated = xMin < 0.0 || yMin < 0.0 || xMax > cam.width || yMax > cam.height ||
                           inFront < 8;
    xMin = std::max(xMin, 0.0);
    yMin = std::max(yMin, 0.0);
    xMax = std::min(xMax, static_cast<double>(cam.width));
    yMax = std::min(yMax, static_cast<double>(cam.height));
    if (xMin >= xMax || yMin >= yMax) continue;

    // Rule 3: minimum pixel size.
    if (xMax - xMin < rules.minWidth || yMax - yMin < rules.minHeight) continue;

    // Rule 4: occlusion cutoff (solo coverage vs visible pixels).
    const int solo = counter.Count(*node.mesh, node.pose, cam);
    const auto visIt = visibleCount.find(node.mesh->instanceId);
    const int visible = visIt == visibleCount.end() ? 0 : visIt->second;
    const double occlusion =
        solo == 0 ? 1.0 : 1.0 - static_cast<double>(visible) / static_cast<double>(solo);
    if (occlusion > rules.occlusionThreshold) continue;

    BoxAnnotation box;
    box.frame = frameIndex;
    box.trackId = node.mesh->instanceId;
    box.classId = node.mesh->triClass.empty() ? ClassId::kCar : node.mesh->triClass.front();
    box.xMin = xMin;
    box.yMin = yMin;
    box.xMax = xMax;
    box.yMax = yMax;
    box.occlusionRate = occlusion;
    box.truncated = truncated;
    boxes.push_back(box);
  }
  std::sort(boxes.begin(), boxes.end(),
            [](const BoxAnnotation& a, const BoxAnnotation& b) { return a.trackId < b.trackId; });
  return boxes;
}

TrackTable BuildTracks(const std::vector<std::vector<BoxAnnotation>>& boxesPerFrame)
{
  TrackTable table;
  for (const auto& frameBoxes : boxesPerFrame) {
    for (const BoxAnnotation& box : frameBoxes) {
      Track& track = table[box.trackId];
      if (track.segments.empty()) {
        track.trackId = box.trackId;
        track.classId = box.classId;
        track.displayColor = InstanceDisplayColor(box.trackId);
        track.segments.push_back({box.frame, box.frame});
        continue;
      }
      TrackSegment& last = track.segments.back();
      if (box.frame == last.lastFrame + 1) {
        last.lastFrame = box.frame;
      } else if (box.frame > last.lastFrame + 1) {
        track.segments.push_back({box.frame, box.frame});
      }
    }
  }
  return table;
}

}  // namespace usynth
