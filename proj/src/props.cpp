#include <algorithm>

#include "usynth/rng.hpp"
#include "usynth/scene.hpp"

namespace usynth {

namespace {

constexpr double kSidewalkWidth = 2.0;

Mesh MakeTree(std::uint64_t seed, std::uint64_t counter)
{
  const double trunkH = RandRange(seed, "tree-trunk"_tag, counter, 2.2, 3.2);
  const double crownH = RandRange(seed, "tree-crown"_tag, counter, 2.5, 4.5);
  const double crownR = RandRange(seed, "tree-radius"_tag, counter, 1.2, 2.2);
  MeshBuilder b;
  b.AddCylinder({0.0, 0.0}, 0.0, 0.22, trunkH, 8, ClassId::kTree, {0.35, 0.25, 0.15});
  b.AddCone({0.0, 0.0}, trunkH, crownR, crownH, 10, ClassId::kTree, {0.1, 0.35, 0.12});
  return b.Take();
}

Mesh MakeLampPole()
{
  MeshBuilder b;
  b.AddCylinder({0.0, 0.0}, 0.0, 0.12, 5.0, 8, ClassId::kLampPole, {0.4, 0.4, 0.42});
  // Arm reaching over the road with the luminaire box.
  b.AddBox({0.0, -0.1, 4.8}, {1.4, 0.1, 5.0}, ClassId::kLampPole, {0.4, 0.4, 0.42});
  b.AddBox({1.0, -0.15, 4.7}, {1.5, 0.15, 4.85}, ClassId::kLampPole, {0.85, 0.85, 0.7});
  return b.Take();
}

Mesh MakeTrafficLight()
{
  MeshBuilder b;
  b.AddCylinder({0.0, 0.0}, 0.0, 0.1, 3.4, 8, ClassId::kTrafficLight, {0.25, 0.25, 0.25});
  b.AddBox({-0.18, -0.18, 3.4}, {0.18, 0.18, 4.3}, ClassId::kTrafficLight, {0.1, 0.1, 0.1});
  return b.Take();
}

Mesh MakeTrafficSign()
{
  MeshBuilder b;
  b.AddCylinder({0.0, 0.0}, 0.0, 0.06, 2.4, 6, ClassId::kTrafficSign, {0.5, 0.5, 0.5});
  b.AddBox({-0.35, -0.03, 2.4}, {0.35, 0.03, 3.1}, ClassId::kTrafficSign, {0.8, 0.15, 0.15});
  return b.Take();
}

Mesh MakePedestrian(std::uint64_t seed, std::uint64_t counter)
{
  const double h = RandRange(seed, "ped-height"_tag, counter, 1.55, 1.9);
  const Color shirt{RandRange(seed, "ped-r"_tag, counter, 0.2, 0.9),
                    RandRange(seed, "ped-g"_tag, counter, 0.2, 0.9),
                    RandRange(seed, "ped-b"_tag, counter, 0.2, 0.9)};
  MeshBuilder b;
  b.AddBox({-0.12, -0.2, 0.0}, {0.12, 0.2, h * 0.52}, ClassId::kPedestrian, {0.2, 0.2, 0.3});
  b.AddBox({-0.14, -0.22, h * 0.52}, {0.14, 0.22, h * 0.85}, ClassId::kPedestrian, shirt);
  b.AddBox({-0.1, -0.11, h * 0.85}, {0.1, 0.11, h}, ClassId::kPedestrian, {0.85, 0.7, 0.6});
  return b.Take();
}

Mesh MakeCyclist()
{
  MeshBuilder b;
  // Bicycle silhouette: two wheel boxes plus frame, rider leaning forward.
  b.AddBox({-0.8, -0.06, 0.0}, {-0.25, 0.06, 0.6}, ClassId::kCyclist, {0.15, 0.15, 0.15});
  b.AddBox({0.25, -0.06, 0.0}, {0.8, 0.06, 0.6}, ClassId::kCyclist, {0.15, 0.15, 0.15});
  b.AddBox({-0.4, -0.05, 0.55}, {0.45, 0.05, 0.75}, ClassId::kCyclist, {0.5, 0.1, 0.1});
  b.AddBox({-0.2, -0.18, 0.75}, {0.25, 0.18, 1.55}, ClassId::kCyclist, {0.2, 0.4, 0.7});
  b.AddBox({0.0, -0.1, 1.55}, {0.2, 0.1, 1.75}, ClassId::kCyclist, {0.85, 0.7, 0.6});
  return b.Take();
}

Mesh MakeChair()
{
  MeshBuilder b;
  b.AddBox({-0.25, -0.25, 0.38}, {0.25, 0.25, 0.45}, ClassId::kChair, {0.5, 0.35, 0.2});
  b.AddBox({-0.25, 0.18, 0.45}, {0.25, 0.25, 0.95}, ClassId::kChair, {0.5, 0.35, 0.2});
  b.AddBox({-0.22, -0.22, 0.0}, {-0.16, -0.16, 0.38}, ClassId::kChair, {0.3, 0.2, 0.12});
  b.AddBox({0.16, -0.22, 0.0}, {0.22, -0.16, 0.38}, ClassId::kChair, {0.3, 0.2, 0.12});
  b.AddBox({-0.22, 0.16, 0.0}, {-0.16, 0.22, 0.38}, ClassId::kChair, {0.3, 0.2, 0.12});
  b.AddBox({0.16, 0.16, 0.0}, {0.22, 0.22, 0.38}, ClassId::kChair, {0.3, 0.2, 0.12});
  return b.Take();
}

Mesh MakeBillboard()
{
  MeshBuilder b;
  b.AddCylinder({-1.4, 0.0}, 0.0, 0.1, 4.0, 6, ClassId::kBillboard, {0.4, 0.4, 0.4});
  b.AddCylinder({1.4, 0.0}, 0.0, 0.1, 4.0, 6, ClassId::kBillboard, {0.4, 0.4, 0.4});
  b.AddBox({-1.8, -0.08, 4.0}, {1.8, 0.08, 6.2}, ClassId::kBillboard, {0.9, 0.8, 0.3});
  return b.Take();
}

Mesh MakeFencePanel(double length)
{
  MeshBuilder b;
  b.AddBox({0.0, -0.04, 0.0}, {length, 0.04, 1.2}, ClassId::kFence, {0.45, 0.45, 0.48});
  return b.Take();
}

struct SidewalkSpot {
  Vec2 position;
  double yaw;
};

// Evenly spaced positions along both sidewalk centerlines of every segment.
std::vector<SidewalkSpot> SidewalkSpots(const RoadNetwork& net, double spacing, double margin)
{
  std::vector<SidewalkSpot> spots;
  if (spacing <= 0.0 || !std::isfinite(spacing)) return spots;
  for (const RoadSegment& seg : net.segments) {
    const double half = seg.Width() / 2.0 + kSidewalkWidth / 2.0;
    for (const double side : {-1.0, +1.0}) {
      const Polyline2 walk = OffsetPolyline(seg.centerline, side * half);
      const double len = PolylineLength(walk);
      for (double s = margin; s + margin <= len; s += spacing) {
        const Vec2 p = PointAtArcLength(walk, s);
        const Vec2 d = TangentAtArcLength(walk, s);
        spots.push_back({p, std::atan2(d.y, d.x)});
      }
    }
  }
  return spots;
}

}  // namespace

std::vector<PlacedProp> PlaceProps(const RoadNetwork& net, const PropPolicy& policy,
                                   std::uint64_t seed)
{
  std::vector<PlacedProp> props;
  std::uint64_t counter = 0;

  // Lamp poles at every spacing step; trees midway between them.
  for (const SidewalkSpot& spot : SidewalkSpots(net, policy.spacing, 6.0)) {
    PlacedProp prop;
    prop.mesh = MakeLampPole();
    prop.pose.translation = {spot.position.x, spot.position.y, 0.0};
    prop.pose.yaw = spot.yaw + kPi / 2.0;  // arm reaches over the road
    props.push_back(std::move(prop));
  }
  if (policy.spacing > 0.0 && std::isfinite(policy.spacing)) {
    for (const SidewalkSpot& spot :
         SidewalkSpots(net, policy.spacing, 6.0 + policy.spacing / 2.0)) {
      ++counter;
      PlacedProp prop;
      prop.mesh = MakeTree(seed, counter);
      prop.pose.translation = {spot.position.x, spot.position.y, 0.0};
      prop.pose.yaw = spot.yaw;
      props.push_back(std::move(prop));
    }
  }

  if (policy.trafficControl) {
    std::uint64_t jc = 0;
    for (const Junction& j : net.junctions) {
      ++jc;
      const double r = 6.5;
      PlacedProp light;
      light.mesh = MakeTrafficLight();
      const double a0 = RandRange(seed, "light-angle"_tag, jc, 0.0, 2.0 * kPi);
      light.pose.translation = {j.position.x + r * std::cos(a0), j.position.y + r * std::sin(a0),
                                0.0};
      light.pose.yaw = a0 + kPi;
      props.push_back(std::move(light));

      PlacedProp sign;
      sign.mesh = MakeTrafficSign();
      sign.pose.translation = {j.position.x + r * std::cos(a0 + kPi / 2.0),
                               j.position.y + r * std::sin(a0 + kPi / 2.0), 0.0};
      sign.pose.yaw = a0 + kPi / 2.0;
      props.push_back(std::move(sign));
    }
  }

  // Scattered static figures and street furniture.
  const auto scatterSpots = SidewalkSpots(net, 7.0, 9.5);
  auto scatter = [&](int count, std::uint64_t stream, auto makeMesh) {
    for (int i = 0; i < count && !scatterSpots.empty(); ++i) {
      const auto& spot =
          scatterSpots[RandIndex(seed, stream, i, static_cast<std::uint32_t>(scatterSpots.size()))];
      PlacedProp prop;
      prop.mesh = makeMesh(static_cast<std::uint64_t>(i));
      prop.pose.translation = {spot.position.x, spot.position.y, 0.0};
      prop.pose.yaw = spot.yaw + RandRange(seed, stream ^ "yaw"_tag, i, -kPi, kPi);
      props.push_back(std::move(prop));
    }
  };
  scatter(policy.pedestrians, "pedestrians"_tag,
          [&](std::uint64_t i) { return MakePedestrian(seed, i); });
  scatter(policy.cyclists, "cyclists"_tag, [&](std::uint64_t) { return MakeCyclist(); });
  scatter(policy.chairs, "chairs"_tag, [&](std::uint64_t) { return MakeChair(); });

  if (policy.billboards) {
    std::uint64_t bc = 0;
    for (const RoadSegment& seg : net.segments) {
      if (PolylineLength(seg.centerline) < 60.0) continue;
      if (RandUnit(seed, "billboard-pick"_tag, ++bc) > 0.3) continue;
      const double half = seg.Width() / 2.0 + kSidewalkWidth + 2.0;
      const Polyline2 line = OffsetPolyline(seg.centerline, half);
      const double s = PolylineLength(line) / 2.0;
      const Vec2 p = PointAtArcLength(line, s);
      const Vec2 d = TangentAtArcLength(line, s);
      PlacedProp prop;
      prop.mesh = MakeBillboard();
      prop.pose.translation = {p.x, p.y, 0.0};
      prop.pose.yaw = std::atan2(d.y, d.x);
      props.push_back(std::move(prop));
    }
  }

  if (policy.fences) {
    for (const Footprint& fp : net.footprints) {
      if (fp.IsBuilding()) continue;
      for (std::size_t i = 0; i < fp.polygon.size(); ++i) {
        const Vec2 a = fp.polygon[i];
        const Vec2 b = fp.polygon[(i + 1) % fp.polygon.size()];
        const double len = Length(b - a);
        if (len < 1.0) continue;
        PlacedProp prop;
        prop.mesh = MakeFencePanel(len);
        prop.pose.translation = {a.x, a.y, 0.0};
        prop.pose.yaw = std::atan2(b.y - a.y, b.x - a.x);
        props.push_back(std::move(prop));
      }
    }
  }

  return props;
}

}  // namespace usynth
