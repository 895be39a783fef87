#include "usynth/scene.hpp"

#include <algorithm>

#include "usynth/rng.hpp"

namespace usynth {

namespace {

const Color kGroundColor{0.30, 0.36, 0.24};
const Color kParkColor{0.25, 0.45, 0.22};

const std::array<Color, 6> kVehiclePalette = {{
    {0.75, 0.75, 0.78},
    {0.15, 0.15, 0.17},
    {0.55, 0.1, 0.1},
    {0.15, 0.25, 0.5},
    {0.8, 0.78, 0.7},
    {0.2, 0.4, 0.3},
}};

Aabb2 NetworkBounds(const RoadNetwork& net)
{
  Aabb2 b;
  for (const RoadSegment& seg : net.segments)
    for (const Vec2 p : seg.centerline) b.Grow(p);
  for (const Footprint& fp : net.footprints)
    for (const Vec2 p : fp.polygon) b.Grow(p);
  if (b.min.x > b.max.x) {
    b.Grow({-50.0, -50.0});
    b.Grow({50.0, 50.0});
  }
  return b;
}

}  // namespace

SceneGraph BuildScene(const RoadNetwork& net, const RuleProgram& rules,
                      const SceneBuildParams& params)
{
  SceneGraph scene;
  scene.groundExtent = NetworkBounds(net);

  // Ground plane slightly below the road surface, oversized by a margin.
  {
    const double m = 40.0;
    const Vec2 lo = scene.groundExtent.min - Vec2{m, m};
    const Vec2 hi = scene.groundExtent.max + Vec2{m, m};
    MeshBuilder b;
    b.AddQuad({lo.x, lo.y, -0.05}, {hi.x, lo.y, -0.05}, {hi.x, hi.y, -0.05}, {lo.x, hi.y, -0.05},
              ClassId::kVegetation, kGroundColor);
    scene.statics.push_back({b.Take(), NodePose::Identity()});
  }

  // Closed regions: buildings run the grammar, everything else becomes a
  // flat colored ground patch.
  std::uint64_t footprintIndex = 0;
  for (const Footprint& fp : net.footprints) {
    ++footprintIndex;
    if (fp.IsBuilding()) {
      Mesh mesh = ApplyRules(rules, fp.polygon,
                             RandU64(params.seed, "building"_tag, footprintIndex));
      if (!mesh.triangles.empty())
        scene.statics.push_back({std::move(mesh), NodePose::Identity()});
    } else {
      MeshBuilder b;
      Polygon2 raised = fp.polygon;
      b.AddPrism(raised, -0.02, 0.0, ClassId::kVegetation, kParkColor);
      scene.statics.push_back({b.Take(), NodePose::Identity()});
    }
  }

  for (Mesh& mesh : GenerateRoadMeshes(net))
    scene.statics.push_back({std::move(mesh), NodePose::Identity()});

  for (PlacedProp& prop : PlaceProps(net, params.props, params.seed))
    scene.statics.push_back({std::move(prop.mesh), prop.pose});

  // Vehicles: dynamic slots bound to trajectories, instance ids first.
  PopulatedVehicles vehicles = PopulateVehicles(net, params.census, params.seed, params.duration);
  scene.trajectories = std::move(vehicles.trajectories);
  std::uint32_t nextInstance = 1;
  for (std::size_t i = 0; i < scene.trajectories.size(); ++i) {
    const Color color =
        kVehiclePalette[RandIndex(params.seed, "vehicle-color"_tag, i,
                                  static_cast<std::uint32_t>(kVehiclePalette.size()))];
    Mesh tmpl = BuildVehicleTemplate(vehicles.kinds[i], color);
    tmpl.instanceId = nextInstance++;
    scene.dynamics.push_back({std::move(tmpl), static_cast<std::uint32_t>(i)});
  }

  // Remaining annotatable statics (pedestrians, cyclists) get the next ids.
  for (StaticNode& node : scene.statics) {
    if (node.mesh.triClass.empty()) continue;
    if (IsAnnotatable(node.mesh.triClass.front())) node.mesh.instanceId = nextInstance++;
  }

  return scene;
}

std::vector<RenderNode> SnapshotScene(const SceneGraph& scene, double t, double tPrev)
{
  std::vector<RenderNode> nodes;
  nodes.reserve(scene.statics.size() + scene.dynamics.size());
  for (const StaticNode& s : scene.statics) nodes.push_back({&s.mesh, s.pose, s.pose, true});

  for (const DynamicSlot& slot : scene.dynamics) {
    const Trajectory& traj = scene.trajectories[slot.trajectoryId];
    const auto now = PoseAt(traj, t);
    if (!now) continue;
    RenderNode node;
    node.mesh = &slot.meshTemplate;
    node.pose = {{now->position.x, now->position.y, now->position.z}, now->yaw};
    const auto prev = PoseAt(traj, tPrev);
    if (prev) {
      node.posePrev = {{prev->position.x, prev->position.y, prev->position.z}, prev->yaw};
      node.existedPrev = true;
    } else {
      node.posePrev = node.pose;
      node.existedPrev = false;
    }
    nodes.push_back(std::move(node));
  }
  return nodes;
}

}  // namespace usynth
