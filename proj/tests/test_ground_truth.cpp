#include <doctest.h>

#include <cmath>
#include <set>

#include "usynth/codecs.hpp"
#include "usynth/error.hpp"
#include "usynth/ground_truth.hpp"

using namespace usynth;

namespace {

Camera ExactCamera(double fpx = 50.0, int w = 100, int h = 75, double near = 0.5,
                   Vec3 position = {0, 0, 0})
{
  Camera cam;  // default basis faces +x
  cam.position = position;
  cam.fpx = fpx;
  cam.cx = w / 2.0;
  cam.cy = h / 2.0;
  cam.nearPlane = near;
  cam.width = w;
  cam.height = h;
  return cam;
}

Mesh FacingQuad(double d, double halfW, double halfH, std::uint32_t instance,
                ClassId cls = ClassId::kCar, double offY = 0.0, double offZ = 0.0)
{
  MeshBuilder b;
  b.AddQuad({d, offY + halfW, offZ - halfH}, {d, offY - halfW, offZ - halfH},
            {d, offY - halfW, offZ + halfH}, {d, offY + halfW, offZ + halfH}, cls,
            {0.5, 0.5, 0.5});
  return b.Take(instance);
}

RenderNode NodeOf(const Mesh& mesh)
{
  RenderNode n;
  n.mesh = &mesh;
  return n;
}

}  // namespace

TEST_CASE("semantic images ignore the environment by construction")
{
  const Camera cam = ExactCamera();
  const Mesh quad = FacingQuad(10.0, 3.0, 2.0, 1, ClassId::kBuilding);
  GBuffer g;
  Rasterize({NodeOf(quad)}, cam, g, 1);

  const ImageGray8 ids = SemanticIdImage(g);
  const ImageRgb8 rgb = SemanticRgbImage(g);
  // Sky pixels carry the sky palette color, surfaces the building color.
  const Rgb8 sky = PaletteColor(ClassId::kSky);
  const Rgb8 building = PaletteColor(ClassId::kBuilding);
  for (std::size_t p = 0; p < g.PixelCount(); ++p) {
    const Rgb8 expected = g.IsSky(p) ? sky : building;
    CHECK(rgb.data[p * 3 + 0] == expected.r);
    CHECK(rgb.data[p * 3 + 1] == expected.g);
    CHECK(rgb.data[p * 3 + 2] == expected.b);
    CHECK(ids.data[p] < kClassCount);  // every pixel maps into the palette
  }
}

TEST_CASE("palette colors are pairwise distinct")
{
  std::set<std::tuple<int, int, int>> seen;
  for (const SemanticClass& c : SemanticClasses())
    CHECK(seen.insert({c.paletteColor.r, c.paletteColor.g, c.paletteColor.b}).second);
  CHECK(seen.size() == kClassCount);
}

TEST_CASE("instance image: three visible cars, buildings zero")
{
  const Camera cam = ExactCamera();
  const Mesh carA = FacingQuad(8.0, 1.0, 0.8, 1, ClassId::kCar, -3.0);
  const Mesh carB = FacingQuad(8.0, 1.0, 0.8, 2, ClassId::kCar, 0.0);
  const Mesh carC = FacingQuad(8.0, 1.0, 0.8, 3, ClassId::kCar, 3.0);
  Mesh wall = FacingQuad(18.0, 12.0, 9.0, 0, ClassId::kBuilding);
  GBuffer g;
  Rasterize({NodeOf(carA), NodeOf(carB), NodeOf(carC), NodeOf(wall)}, cam, g, 1);

  const ImageGray16 inst = InstanceImage(g);
  std::set<std::uint16_t> ids;
  for (std::size_t p = 0; p < g.PixelCount(); ++p) {
    if (inst.data[p] != 0) ids.insert(inst.data[p]);
    if (g.classId[p] == static_cast<std::uint8_t>(ClassId::kBuilding))
      CHECK(inst.data[p] == 0);
  }
  CHECK(ids == std::set<std::uint16_t>{1, 2, 3});
}

TEST_CASE("instance display colors form a bijection on realistic id ranges")
{
  std::set<std::tuple<int, int, int>> colors;
  for (std::uint32_t id = 1; id <= 5000; ++id) {
    const Rgb8 c = InstanceDisplayColor(id);
    CHECK(colors.insert({c.r, c.g, c.b}).second);
  }
}

TEST_CASE("depth normalization: 0 at near, 0.5 at 2n, 1 at sky")
{
  GBuffer g;
  g.Reset(3, 1);
  g.nodeIndex[0] = 0;
  g.depth[0] = 0.5;  // z = n
  g.nodeIndex[1] = 0;
  g.depth[1] = 1.0;  // z = 2n
  const ImageGrayF d = DepthImage(g, 0.5);
  CHECK(d.data[0] == doctest::Approx(0.0));
  CHECK(d.data[1] == doctest::Approx(0.5));
  CHECK(d.data[2] == doctest::Approx(1.0));  // sky
}

TEST_CASE("depth is nonlinear and monotone in z")
{
  GBuffer g;
  g.Reset(3, 1);
  for (int i = 0; i < 3; ++i) g.nodeIndex[i] = 0;
  g.depth[0] = 1.0;
  g.depth[1] = 2.0;
  g.depth[2] = 3.0;
  const ImageGrayF d = DepthImage(g, 1.0);
  CHECK(d.data[0] < d.data[1]);
  CHECK(d.data[1] < d.data[2]);
  // Midpoint of a linear ramp would land halfway; 1 - n/z does not.
  CHECK(std::abs((d.data[2] + d.data[0]) / 2.0 - d.data[1]) > 0.05);
}

TEST_CASE("static scene and camera give zero flow everywhere visible")
{
  const Camera cam = ExactCamera();
  const Mesh wall = FacingQuad(12.0, 10.0, 8.0, 0, ClassId::kBuilding);
  GBuffer g;
  const std::vector<RenderNode> nodes = {NodeOf(wall)};
  Rasterize(nodes, cam, g, 1);
  const FlowField flow = ComputeFlowField(g, nodes, cam, cam, 0.1);
  std::size_t valid = 0;
  for (std::size_t p = 0; p < flow.u.size(); ++p) {
    if (!flow.valid[p]) continue;
    ++valid;
    CHECK(std::abs(flow.u[p]) < 1e-9);
    CHECK(std::abs(flow.v[p]) < 1e-9);
  }
  CHECK(valid > 1000);
}

TEST_CASE("camera slide: u = -f dx / z")
{
  const double delta = 0.2;
  const Camera camPrev = ExactCamera();
  // Camera x points at world -y, so moving right means world -y.
  const Camera camNow = ExactCamera(50.0, 100, 75, 0.5, {0.0, -delta, 0.0});
  const double wallDist = 10.0;
  const Mesh wall = FacingQuad(wallDist, 12.0, 9.0, 0, ClassId::kBuilding);
  GBuffer g;
  const std::vector<RenderNode> nodes = {NodeOf(wall)};
  Rasterize(nodes, camNow, g, 1);
  const FlowField flow = ComputeFlowField(g, nodes, camNow, camPrev, 0.1);

  const double expected = -camNow.fpx * delta / wallDist;
  std::size_t checked = 0;
  for (std::size_t p = 0; p < flow.u.size(); ++p) {
    if (!flow.valid[p]) continue;
    CHECK(flow.u[p] == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::abs(flow.v[p]) < 1e-9);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("camera roll: tangential flow of magnitude 2 r sin(theta/2)")
{
  const double theta = DegToRad(2.0);
  const Camera camPrev = ExactCamera();
  Camera camNow = camPrev;
  // Roll about the optical axis: rotate right/down within their plane.
  camNow.right = camPrev.right * std::cos(theta) + camPrev.down * std::sin(theta);
  camNow.down = camPrev.right * (-std::sin(theta)) + camPrev.down * std::cos(theta);

  const Mesh wall = FacingQuad(10.0, 14.0, 10.0, 0, ClassId::kBuilding);
  GBuffer g;
  const std::vector<RenderNode> nodes = {NodeOf(wall)};
  Rasterize(nodes, camNow, g, 1);
  const FlowField flow = ComputeFlowField(g, nodes, camNow, camPrev, 0.1);

  std::size_t checked = 0;
  for (int y = 0; y < flow.height; ++y) {
    for (int x = 0; x < flow.width; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * flow.width + x;
      if (!flow.valid[p]) continue;
      const double rx = (x + 0.5) - camNow.cx;
      const double ry = (y + 0.5) - camNow.cy;
      const double r = std::sqrt(rx * rx + ry * ry);
      if (r < 3.0) continue;
      const double mag = std::sqrt(double(flow.u[p]) * flow.u[p] + double(flow.v[p]) * flow.v[p]);
      CHECK(mag == doctest::Approx(2.0 * r * std::sin(theta / 2.0)).epsilon(1e-4));
      // Tangential: perpendicular to the radius vector.
      const double radial = (rx * flow.u[p] + ry * flow.v[p]) / r;
      CHECK(std::abs(radial) < mag * 0.02 + 1e-6);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("flow equals the brute-force reprojection oracle within 1e-6 px")
{
  // Moving vehicle + static wall + moving camera, the full motion mix.
  const Camera camPrev = ExactCamera(60.0, 100, 75, 0.5, {0.0, 0.1, 0.05});
  const Camera camNow = ExactCamera(60.0, 100, 75, 0.5, {0.3, 0.0, 0.0});
  const Mesh wall = FacingQuad(14.0, 12.0, 9.0, 0, ClassId::kBuilding);
  const Mesh car = FacingQuad(8.0, 1.6, 1.1, 4, ClassId::kCar, 1.0, -1.0);

  std::vector<RenderNode> nodes = {NodeOf(wall), NodeOf(car)};
  nodes[1].pose = {{0.4, -0.2, 0.0}, 0.03};
  nodes[1].posePrev = {{0.0, 0.0, 0.0}, 0.0};

  GBuffer g;
  Rasterize(nodes, camNow, g, 1);
  const FlowField flow = ComputeFlowField(g, nodes, camNow, camPrev, 0.1);

  std::size_t checked = 0;
  for (int y = 0; y < flow.height; ++y) {
    for (int x = 0; x < flow.width; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * flow.width + x;
      if (!flow.valid[p]) continue;
      // Oracle: re-project the world-position channel through the previous
      // camera with explicit arithmetic.
      const RenderNode& node = nodes[g.nodeIndex[p]];
      const Vec3 wp = g.worldPos[p];
      const Vec3 local = node.pose.ApplyInverse(wp);
      const Vec3 prevWorld = node.posePrev.Apply(local);
      const Vec3 d = prevWorld - camPrev.position;
      const double xc = Dot(d, camPrev.right), yc = Dot(d, camPrev.down),
                   zc = Dot(d, camPrev.forward);
      REQUIRE(zc > camPrev.nearPlane);
      const double uPrev = camPrev.cx + camPrev.fpx * xc / zc;
      const double vPrev = camPrev.cy + camPrev.fpx * yc / zc;
      CHECK(std::abs(flow.u[p] - ((x + 0.5) - uPrev)) < 1e-6);
      CHECK(std::abs(flow.v[p] - ((y + 0.5) - vPrev)) < 1e-6);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("flow marks nodes absent from the previous frame invalid")
{
  const Camera cam = ExactCamera();
  const Mesh car = FacingQuad(8.0, 2.0, 1.5, 1, ClassId::kCar);
  std::vector<RenderNode> nodes = {NodeOf(car)};
  nodes[0].existedPrev = false;
  GBuffer g;
  Rasterize(nodes, cam, g, 1);
  const FlowField flow = ComputeFlowField(g, nodes, cam, cam, 0.1);
  for (std::size_t p = 0; p < flow.u.size(); ++p) {
    CHECK(flow.valid[p] == 0);
    CHECK(flow.u[p] == 0.0f);
  }
}

TEST_CASE("non-positive frame interval is rejected")
{
  GBuffer g;
  g.Reset(2, 2);
  CHECK_THROWS_AS(ComputeFlowField(g, {}, ExactCamera(), ExactCamera(), 0.0), ValidationError);
}

TEST_CASE("identical frames with zero flow have zero residual")
{
  ImageRgb8 img = ImageRgb8::Create(32, 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x)
      img.Pixel(x, y)[0] = img.Pixel(x, y)[1] = img.Pixel(x, y)[2] =
          static_cast<std::uint8_t>(100 + 50 * std::sin(x * 0.5) * std::sin(y * 0.4) + 50);
  FlowField flow = FlowField::Create(32, 32);
  for (auto& v : flow.valid) v = 1;
  const FlowResidualStats stats = VerifyFlowConstraint(img, img, flow);
  CHECK(stats.samples > 100);
  CHECK(stats.median == doctest::Approx(0.0));
  CHECK(stats.p90 == doctest::Approx(0.0));
}

TEST_CASE("occlusion rate: free, blocked, half covered")
{
  const Camera cam = ExactCamera();
  // Target quad: u in [25, 75], v in [12.5, 62.5] -> 50 x 50 pixel centers.
  const Mesh target = FacingQuad(10.0, 5.0, 5.0, 1, ClassId::kCar);
  SoloCoverageCounter counter;

  GBuffer g;
  std::vector<RenderNode> nodes = {NodeOf(target)};
  Rasterize(nodes, cam, g, 1);
  CHECK(OcclusionRate(1, nodes, cam, g, counter) == doctest::Approx(0.0));

  // Full occluder in front.
  const Mesh blocker = FacingQuad(5.0, 10.0, 8.0, 0, ClassId::kBuilding);
  nodes = {NodeOf(target), NodeOf(blocker)};
  Rasterize(nodes, cam, g, 1);
  CHECK(OcclusionRate(1, nodes, cam, g, counter) == doctest::Approx(1.0));

  // Half occluder: covers the left 25 of 50 columns exactly.
  // Target spans y in [-5, 5]; its left half on screen is world y in [0, 5].
  const Mesh half = FacingQuad(5.0, 1.25, 4.0, 0, ClassId::kBuilding, 1.25, 0.0);
  nodes = {NodeOf(target), NodeOf(half)};
  Rasterize(nodes, cam, g, 1);
  const double rate = OcclusionRate(1, nodes, cam, g, counter);
  CHECK(rate == doctest::Approx(0.5).epsilon(1.0 / 2500.0));
}

TEST_CASE("off-screen instances count as fully occluded")
{
  const Camera cam = ExactCamera();
  const Mesh target = FacingQuad(10.0, 1.0, 1.0, 1, ClassId::kCar, 100.0, 0.0);
  SoloCoverageCounter counter;
  GBuffer g;
  std::vector<RenderNode> nodes = {NodeOf(target)};
  Rasterize(nodes, cam, g, 1);
  CHECK(OcclusionRate(1, nodes, cam, g, counter) == doctest::Approx(1.0));
}

TEST_CASE("rule 1+2: behind-camera objects get no box")
{
  const Camera cam = ExactCamera();
  const Mesh behind = FacingQuad(-5.0, 2.0, 1.0, 1, ClassId::kCar);
  GBuffer g;
  std::vector<RenderNode> nodes = {NodeOf(behind)};
  Rasterize(nodes, cam, g, 1);
  SoloCoverageCounter counter;
  CHECK(DetectionBoxes(nodes, g, cam, {}, 0, counter).empty());
}

TEST_CASE("rule 3 boundary: 15 x 10 kept, 14 x 20 and 20 x 5 dropped")
{
  const Camera cam = ExactCamera();  // fpx exactly 50
  SoloCoverageCounter counter;
  GBuffer g;

  const Mesh keep = FacingQuad(10.0, 1.5, 1.0, 1, ClassId::kCar);  // 15.0 x 10.0 px
  std::vector<RenderNode> nodes = {NodeOf(keep)};
  Rasterize(nodes, cam, g, 1);
  auto boxes = DetectionBoxes(nodes, g, cam, {}, 0, counter);
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].Width() == doctest::Approx(15.0));
  CHECK(boxes[0].Height() == doctest::Approx(10.0));
  CHECK_FALSE(boxes[0].truncated);

  const Mesh narrow = FacingQuad(10.0, 1.4, 2.0, 1, ClassId::kCar);  // 14 x 20 px
  nodes = {NodeOf(narrow)};
  Rasterize(nodes, cam, g, 1);
  CHECK(DetectionBoxes(nodes, g, cam, {}, 0, counter).empty());

  const Mesh flat = FacingQuad(10.0, 2.0, 0.5, 1, ClassId::kCar);  // 20 x 5 px
  nodes = {NodeOf(flat)};
  Rasterize(nodes, cam, g, 1);
  CHECK(DetectionBoxes(nodes, g, cam, {}, 0, counter).empty());
}

TEST_CASE("rule 2: boundary-straddling boxes are clipped and flagged")
{
  const Camera cam = ExactCamera();
  // Wide quad hanging past the left image edge.
  const Mesh wide = FacingQuad(10.0, 14.0, 2.0, 1, ClassId::kCar, 8.0, 0.0);
  GBuffer g;
  std::vector<RenderNode> nodes = {NodeOf(wide)};
  Rasterize(nodes, cam, g, 1);
  SoloCoverageCounter counter;
  const auto boxes = DetectionBoxes(nodes, g, cam, {}, 0, counter);
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].truncated);
  CHECK(boxes[0].xMin == 0.0);
  CHECK(boxes[0].xMax < cam.width);
}

TEST_CASE("rule 4: occlusion above the threshold drops the box")
{
  const Camera cam = ExactCamera();
  const Mesh target = FacingQuad(10.0, 5.0, 5.0, 1, ClassId::kCar);
  // Occluder covering 90% of the 50 columns: 45 columns.
  const Mesh occluder = FacingQuad(5.0, 2.25, 4.0, 0, ClassId::kBuilding, 0.25, 0.0);
  GBuffer g;
  std::vector<RenderNode> nodes = {NodeOf(target), NodeOf(occluder)};
  Rasterize(nodes, cam, g, 1);
  SoloCoverageCounter counter;
  BoxRules rules;  // threshold 0.75
  CHECK(DetectionBoxes(nodes, g, cam, rules, 0, counter).empty());

  rules.occlusionThreshold = 0.95;
  CHECK(DetectionBoxes(nodes, g, cam, rules, 0, counter).size() == 1);
}

TEST_CASE("tracks split at occlusion gaps but keep one id")
{
  std::vector<std::vector<BoxAnnotation>> frames(8);
  for (const int f : {3, 4, 6, 7}) {
    BoxAnnotation box;
    box.frame = f;
    box.trackId = 9;
    box.classId = ClassId::kCar;
    box.xMin = 0;
    box.yMin = 0;
    box.xMax = 20;
    box.yMax = 15;
    frames[f].push_back(box);
  }
  const TrackTable table = BuildTracks(frames);
  REQUIRE(table.size() == 1);
  const Track& track = table.at(9);
  REQUIRE(track.segments.size() == 2);
  CHECK(track.segments[0].firstFrame == 3);
  CHECK(track.segments[0].lastFrame == 4);
  CHECK(track.segments[1].firstFrame == 6);
  CHECK(track.segments[1].lastFrame == 7);
  CHECK(track.displayColor == InstanceDisplayColor(9));
}

TEST_CASE("single frame tracks have length one")
{
  std::vector<std::vector<BoxAnnotation>> frames(1);
  for (std::uint32_t id = 1; id <= 4; ++id) {
    BoxAnnotation box;
    box.frame = 0;
    box.trackId = id;
    frames[0].push_back(box);
  }
  const TrackTable table = BuildTracks(frames);
  CHECK(table.size() == 4);
  for (const auto& [id, track] : table) {
    REQUIRE(track.segments.size() == 1);
    CHECK(track.segments[0].firstFrame == track.segments[0].lastFrame);
  }
}

TEST_CASE("no boxes, no tracks")
{
  CHECK(BuildTracks({}).empty());
  CHECK(BuildTracks({{}, {}, {}}).empty());
}

TEST_CASE("emitted boxes contain every matching instance pixel")
{
  const Camera cam = ExactCamera();
  const Mesh car = FacingQuad(9.0, 2.0, 1.4, 6, ClassId::kCar, 1.0, 0.3);
  GBuffer g;
  std::vector<RenderNode> nodes = {NodeOf(car)};
  Rasterize(nodes, cam, g, 1);
  SoloCoverageCounter counter;
  const auto boxes = DetectionBoxes(nodes, g, cam, {}, 0, counter);
  REQUIRE(boxes.size() == 1);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      if (g.instanceId[static_cast<std::size_t>(y) * g.width + x] != 6) continue;
      CHECK(x + 0.5 >= boxes[0].xMin);
      CHECK(x + 0.5 <= boxes[0].xMax);
      CHECK(y + 0.5 >= boxes[0].yMin);
      CHECK(y + 0.5 <= boxes[0].yMax);
    }
  }
}
