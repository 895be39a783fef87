#include <doctest.h>

#include <limits>
#include <set>

#include "usynth/osm.hpp"
#include "usynth/scene.hpp"

using namespace usynth;

namespace {

RoadNetwork SingleStraightSegment(double length, int lanes, double laneWidth)
{
  RoadNetwork net;
  RoadSegment seg;
  seg.id = 1;
  seg.centerline = {{0, 0}, {length, 0}};
  seg.laneCount = lanes;
  seg.laneWidth = laneWidth;
  net.segments.push_back(seg);
  return net;
}

RoadNetwork FixtureNetwork()
{
  const MapData map = ParseOsmFile(USYNTH_REPO_DIR "/assets/maps/fixture_city.osm");
  return BuildRoadNetwork(map, BoundsCenter(map.bounds), nullptr);
}

}  // namespace

TEST_CASE("road ribbon spans laneCount * laneWidth")
{
  const auto meshes = GenerateRoadMeshes(SingleStraightSegment(100.0, 2, 3.5));
  REQUIRE(meshes.size() == 3);  // road + two sidewalks
  const Aabb3 roadBounds = MeshBounds(meshes[0]);
  CHECK(roadBounds.max.y - roadBounds.min.y == doctest::Approx(7.0));
  CHECK(roadBounds.max.z == 0.0);
  CHECK(roadBounds.min.z == 0.0);
}

TEST_CASE("empty network produces no road meshes")
{
  CHECK(GenerateRoadMeshes(RoadNetwork{}).empty());
}

TEST_CASE("ribbon classes: road center, sidewalk flanks")
{
  const auto meshes = GenerateRoadMeshes(SingleStraightSegment(50.0, 2, 3.5));
  REQUIRE(meshes.size() == 3);
  for (const ClassId c : meshes[0].triClass) CHECK(c == ClassId::kRoad);
  for (const ClassId c : meshes[1].triClass) CHECK(c == ClassId::kSidewalk);
  for (const ClassId c : meshes[2].triClass) CHECK(c == ClassId::kSidewalk);
  // Sidewalks are 2 m wide.
  const Aabb3 walk = MeshBounds(meshes[1]);
  CHECK(walk.max.y - walk.min.y == doctest::Approx(2.0));
}

TEST_CASE("junctions fill with road class")
{
  RoadNetwork net = SingleStraightSegment(50.0, 2, 3.5);
  net.junctions.push_back({{0.0, 0.0}, {1}});
  const auto meshes = GenerateRoadMeshes(net);
  REQUIRE(meshes.size() == 4);
  for (const ClassId c : meshes.back().triClass) CHECK(c == ClassId::kRoad);
}

TEST_CASE("lamp poles land every spacing step")
{
  const RoadNetwork net = SingleStraightSegment(150.0, 2, 3.5);
  PropPolicy policy;
  policy.spacing = 15.0;
  policy.trafficControl = false;
  const auto props = PlaceProps(net, policy, 1);

  int lamps = 0;
  for (const PlacedProp& p : props)
    if (!p.mesh.triClass.empty() && p.mesh.triClass.front() == ClassId::kLampPole) ++lamps;
  // Two sides, ten per side within one.
  CHECK(lamps >= 18);
  CHECK(lamps <= 22);
}

TEST_CASE("disabled spacing places nothing")
{
  const RoadNetwork net = SingleStraightSegment(150.0, 2, 3.5);
  PropPolicy policy;
  policy.spacing = std::numeric_limits<double>::infinity();
  policy.trafficControl = false;
  CHECK(PlaceProps(net, policy, 1).empty());
}

TEST_CASE("prop placement is deterministic in the seed")
{
  const RoadNetwork net = FixtureNetwork();
  PropPolicy policy;
  policy.pedestrians = 6;
  policy.cyclists = 3;
  policy.chairs = 4;
  policy.billboards = true;
  policy.fences = true;
  const auto a = PlaceProps(net, policy, 99);
  const auto b = PlaceProps(net, policy, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mesh == b[i].mesh);
    CHECK(a[i].pose.translation == b[i].pose.translation);
    CHECK(a[i].pose.yaw == b[i].pose.yaw);
  }
}

TEST_CASE("assembled scene has unique stable instance ids")
{
  const RoadNetwork net = FixtureNetwork();
  const RuleProgram rules = ParseRulesFile(USYNTH_REPO_DIR "/assets/rules/downtown.rules");
  SceneBuildParams params;
  params.census.parkedCars = 10;
  params.census.movingCars = 5;
  params.props.pedestrians = 4;
  params.props.cyclists = 2;
  params.seed = 11;

  const SceneGraph scene = BuildScene(net, rules, params);
  CHECK(scene.statics.size() >= 60);
  CHECK(scene.dynamics.size() == 15);
  CHECK(scene.trajectories.size() == 15);

  std::set<std::uint32_t> ids;
  for (const DynamicSlot& d : scene.dynamics) {
    CHECK(d.meshTemplate.instanceId > 0);
    CHECK(ids.insert(d.meshTemplate.instanceId).second);
  }
  int annotatableStatics = 0;
  for (const StaticNode& s : scene.statics) {
    if (s.mesh.instanceId != 0) {
      CHECK(ids.insert(s.mesh.instanceId).second);
      CHECK(IsAnnotatable(s.mesh.triClass.front()));
      ++annotatableStatics;
    }
  }
  CHECK(annotatableStatics == 6);  // 4 pedestrians + 2 cyclists

  // Stability: a second build gives the same ids to the same meshes.
  const SceneGraph again = BuildScene(net, rules, params);
  REQUIRE(again.statics.size() == scene.statics.size());
  for (std::size_t i = 0; i < scene.statics.size(); ++i)
    CHECK(again.statics[i].mesh.instanceId == scene.statics[i].mesh.instanceId);
}

TEST_CASE("dynamic snapshot carries previous poses")
{
  const RoadNetwork net = SingleStraightSegment(200.0, 2, 3.5);
  const RuleProgram rules = ParseRules("Lot --> extrude(5) primitive(box)");
  SceneBuildParams params;
  params.census.movingCars = 1;
  params.census.movingSpeed = 10.0;
  params.duration = 20.0;
  const SceneGraph scene = BuildScene(net, rules, params);
  REQUIRE(scene.dynamics.size() == 1);

  const auto nodes = SnapshotScene(scene, 1.0, 0.9);
  const RenderNode& vehicle = nodes.back();
  CHECK(vehicle.existedPrev);
  const double moved = Length(vehicle.pose.translation - vehicle.posePrev.translation);
  CHECK(moved == doctest::Approx(1.0));  // 10 m/s * 0.1 s
}
