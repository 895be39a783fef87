#include "usynth/vehicles.hpp"

#include <algorithm>

#include "usynth/error.hpp"
#include "usynth/rng.hpp"

namespace usynth {

VehicleDims VehicleDimensions(VehicleKind kind)
{
  switch (kind) {
    case VehicleKind::kCar: return {4.5, 1.8, 1.5};
    case VehicleKind::kBus: return {12.0, 2.5, 3.2};
    case VehicleKind::kTruck: return {8.0, 2.5, 2.9};
  }
  return {4.5, 1.8, 1.5};
}

Mesh BuildVehicleTemplate(VehicleKind kind, Color bodyColor)
{
  const VehicleDims d = VehicleDimensions(kind);
  MeshBuilder b;
  const double hx = d.length / 2.0, hy = d.width / 2.0;

  if (kind == VehicleKind::kCar) {
    const double bodyH = d.height * 0.6;
    b.AddBox({-hx, -hy, 0.0}, {hx, hy, bodyH}, ClassId::kCar, bodyColor);
    // Cabin sits slightly rear of center.
    b.AddBox({-hx * 0.55, -hy * 0.85, bodyH}, {hx * 0.35, hy * 0.85, d.height}, ClassId::kCar,
             {bodyColor.r * 0.6, bodyColor.g * 0.6, bodyColor.b * 0.7});
  } else if (kind == VehicleKind::kBus) {
    b.AddBox({-hx, -hy, 0.0}, {hx, hy, d.height}, ClassId::kCar, bodyColor);
  } else {
    const double cabL = d.length * 0.3;
    b.AddBox({hx - cabL, -hy, 0.0}, {hx, hy, d.height * 0.75}, ClassId::kCar,
             {bodyColor.r * 0.7, bodyColor.g * 0.7, bodyColor.b * 0.75});
    b.AddBox({-hx, -hy, 0.0}, {hx - cabL - 0.3, hy, d.height}, ClassId::kCar, bodyColor);
  }
  return b.Take();
}

namespace {

struct Slot {
  Polyline2 path;       // the lane/curb polyline this slot lives on
  double offset = 0.0;  // arc length of the slot center
  bool reverse = false; // path should be traversed reversed (two-way left lanes)
};

Polyline2 MaybeReverse(const Polyline2& path, bool reverse)
{
  if (!reverse) return path;
  Polyline2 out(path.rbegin(), path.rend());
  return out;
}

}  // namespace

PopulatedVehicles PopulateVehicles(const RoadNetwork& net, const VehicleCensus& census,
                                   std::uint64_t seed, double duration)
{
  PopulatedVehicles out;
  if (census.Total() == 0) return out;

  // Moving vehicles: distribute over directed lane centerlines.
  std::vector<VehicleKind> movingKinds;
  movingKinds.insert(movingKinds.end(), census.movingCars, VehicleKind::kCar);
  movingKinds.insert(movingKinds.end(), census.movingBuses, VehicleKind::kBus);
  movingKinds.insert(movingKinds.end(), census.movingTrucks, VehicleKind::kTruck);

  std::vector<VehicleKind> parkedKinds;
  parkedKinds.insert(parkedKinds.end(), census.parkedCars, VehicleKind::kCar);
  parkedKinds.insert(parkedKinds.end(), census.parkedBuses, VehicleKind::kBus);
  parkedKinds.insert(parkedKinds.end(), census.parkedTrucks, VehicleKind::kTruck);

  // Deterministic interleave so types mix along the streets.
  auto shuffle = [&](std::vector<VehicleKind>& kinds, std::uint64_t stream) {
    for (std::size_t i = kinds.size(); i > 1; --i) {
      const std::size_t j = RandIndex(seed, stream, i, static_cast<std::uint32_t>(i));
      std::swap(kinds[i - 1], kinds[j]);
    }
  };
  shuffle(movingKinds, "moving-kinds"_tag);
  shuffle(parkedKinds, "parked-kinds"_tag);

  // Lane slots for moving vehicles. In two-way segments the left half of the
  // lanes (indices below laneCount/2) runs against the way direction.
  const double slotLength = VehicleDimensions(VehicleKind::kBus).length + 8.0;
  std::vector<Slot> laneSlots;
  for (const RoadSegment& seg : net.segments) {
    const auto lanes = LaneCenterlines(seg);
    const double len = PolylineLength(seg.centerline);
    const int perLane = static_cast<int>(std::floor((len - 4.0) / slotLength));
    for (std::size_t li = 0; li < lanes.size(); ++li) {
      const bool reverse = seg.direction == RoadDirection::kTwoWay &&
                           li < lanes.size() / 2;
      for (int k = 0; k < perLane; ++k) {
        laneSlots.push_back({lanes[li], 4.0 + (k + 0.5) * slotLength, reverse});
      }
    }
  }
  if (static_cast<int>(laneSlots.size()) < census.MovingTotal())
    throw ValidationError("moving census " + std::to_string(census.MovingTotal()) +
                          " exceeds lane capacity of " + std::to_string(laneSlots.size()) +
                          " start slots");

  // Spread moving vehicles across distinct slots; stride keeps them apart.
  for (std::size_t i = 0; i < movingKinds.size(); ++i) {
    const std::size_t slotIdx =
        (i * laneSlots.size() / std::max<std::size_t>(1, movingKinds.size()) +
         RandIndex(seed, "moving-jitter"_tag, i,
                   static_cast<std::uint32_t>(
                       std::max<std::size_t>(1, laneSlots.size() / movingKinds.size())))) %
        laneSlots.size();
    const Slot& slot = laneSlots[slotIdx];
    Trajectory traj;
    traj.lanePath = MaybeReverse(slot.path, slot.reverse);
    traj.startOffset = slot.reverse ? PolylineLength(slot.path) - slot.offset : slot.offset;
    traj.speed = census.movingSpeed;
    traj.startTime = 0.0;
    traj.endTime = duration;
    traj.parked = false;
    out.trajectories.push_back(std::move(traj));
    out.kinds.push_back(movingKinds[i]);
  }

  // Parked vehicles: curb strip just inside the road edge, both sides.
  struct CurbCursor {
    Polyline2 path;
    double cursor = 2.0;
    double length = 0.0;
  };
  std::vector<CurbCursor> curbs;
  for (const RoadSegment& seg : net.segments) {
    const double halfWidth = seg.Width() / 2.0;
    for (const double side : {+1.0, -1.0}) {
      CurbCursor c;
      c.path = OffsetPolyline(seg.centerline, side * (halfWidth - 1.2));
      c.length = PolylineLength(c.path);
      curbs.push_back(std::move(c));
    }
  }

  std::size_t curbIdx = 0;
  int parkedPlaced = 0;
  int parkedCapacity = 0;
  {
    // Capacity estimate for the error message: car-sized slots.
    const double carSlot = VehicleDimensions(VehicleKind::kCar).length + 2.0;
    for (const CurbCursor& c : curbs)
      parkedCapacity += static_cast<int>(std::floor((c.length - 2.0) / carSlot));
  }
  for (std::size_t i = 0; i < parkedKinds.size(); ++i) {
    const double need = VehicleDimensions(parkedKinds[i]).length + 2.0;
    std::size_t attempts = 0;
    while (attempts < curbs.size() &&
           curbs[curbIdx].cursor + need > curbs[curbIdx].length) {
      curbIdx = (curbIdx + 1) % curbs.size();
      ++attempts;
    }
    if (attempts >= curbs.size())
      throw ValidationError("parked census " + std::to_string(census.ParkedTotal()) +
                            " exceeds curb capacity of approximately " +
                            std::to_string(parkedCapacity) + " car-sized slots");
    CurbCursor& curb = curbs[curbIdx];
    Trajectory traj;
    traj.lanePath = curb.path;
    traj.startOffset = curb.cursor + need / 2.0;
    traj.speed = 0.0;
    traj.startTime = 0.0;
    traj.endTime = duration;
    traj.parked = true;
    curb.cursor += need;
    out.trajectories.push_back(std::move(traj));
    out.kinds.push_back(parkedKinds[i]);
    ++parkedPlaced;
    curbIdx = (curbIdx + 1) % curbs.size();  // round-robin across street sides
  }
  (void)parkedPlaced;

  return out;
}

}  // namespace usynth
