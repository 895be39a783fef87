#pragma once

#include <cstdint>
#include <vector>

#include "usynth/dynamics.hpp"
#include "usynth/mesh.hpp"
#include "usynth/road_network.hpp"
#include "usynth/rules.hpp"
#include "usynth/vehicles.hpp"

namespace usynth {

// Per-segment road ribbon (class road, width laneCount * laneWidth) plus two
// 2 m sidewalk ribbons, and a filled disc per junction. Everything at z = 0.
std::vector<Mesh> GenerateRoadMeshes(const RoadNetwork& net);

struct PropPolicy {
  double spacing = 15.0;        // trees/lamp poles along sidewalks; <= 0 disables
  int pedestrians = 0;          // static figures scattered on sidewalks
  int cyclists = 0;
  int chairs = 0;
  bool billboards = false;      // sparse roadside billboards
  bool fences = false;          // fences around non-building footprints
  bool trafficControl = true;   // lights + signs at junctions
};

struct PlacedProp {
  Mesh mesh;      // local frame, origin at ground contact
  NodePose pose;
};

// Deterministic in (net, policy, seed). Pedestrian/cyclist meshes are the
// annotatable statics; their instance ids are assigned at assembly.
std::vector<PlacedProp> PlaceProps(const RoadNetwork& net, const PropPolicy& policy,
                                   std::uint64_t seed);

struct StaticNode {
  Mesh mesh;
  NodePose pose;
};

struct DynamicSlot {
  Mesh meshTemplate;           // instanceId already assigned
  std::uint32_t trajectoryId;
};

struct SceneGraph {
  std::vector<StaticNode> statics;
  std::vector<DynamicSlot> dynamics;
  std::vector<Trajectory> trajectories;
  Aabb2 groundExtent;
};

struct SceneBuildParams {
  PropPolicy props;
  VehicleCensus census;
  std::uint64_t seed = 0;
  double duration = 10.0;
};

// Assembles the full static + dynamic scene. Single-threaded so instance ids
// come out identical run to run: vehicles get ids 1..V in trajectory order,
// then static pedestrians/cyclists.
SceneGraph BuildScene(const RoadNetwork& net, const RuleProgram& rules,
                      const SceneBuildParams& params);

// One renderable entity for a frame: mesh, pose now, pose at the previous
// frame time (for flow), and whether it existed then.
struct RenderNode {
  const Mesh* mesh = nullptr;
  NodePose pose;
  NodePose posePrev;
  bool existedPrev = true;
};

// Snapshot of all active nodes at time t (previous poses at tPrev).
std::vector<RenderNode> SnapshotScene(const SceneGraph& scene, double t, double tPrev);

}  // namespace usynth
