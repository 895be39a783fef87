#pragma once

#include <cstdint>
#include <vector>

#include "usynth/dynamics.hpp"
#include "usynth/mesh.hpp"
#include "usynth/road_network.hpp"

namespace usynth {

enum class VehicleKind { kCar, kBus, kTruck };

struct VehicleDims {
  double length, width, height;
};

VehicleDims VehicleDimensions(VehicleKind kind);

// Box-compound archetype in a local frame: origin at the ground-plane center,
// +x forward. Instance id is assigned at scene assembly.
Mesh BuildVehicleTemplate(VehicleKind kind, Color bodyColor);

struct VehicleCensus {
  int parkedCars = 0;
  int parkedBuses = 0;
  int parkedTrucks = 0;
  int movingCars = 0;
  int movingBuses = 0;
  int movingTrucks = 0;
  double movingSpeed = 10.0;  // m/s

  int ParkedTotal() const { return parkedCars + parkedBuses + parkedTrucks; }
  int MovingTotal() const { return movingCars + movingBuses + movingTrucks; }
  int Total() const { return ParkedTotal() + MovingTotal(); }
};

struct PopulatedVehicles {
  std::vector<Trajectory> trajectories;       // moving first, then parked
  std::vector<VehicleKind> kinds;             // parallel to trajectories
};

// Parked vehicles go to curbside slots just inside the road edge; moving ones
// spread over lane centerlines with non-overlapping start offsets. Both are
// deterministic in (net, census, seed). Throws when the census exceeds
// capacity, reporting how many slots exist.
PopulatedVehicles PopulateVehicles(const RoadNetwork& net, const VehicleCensus& census,
                                   std::uint64_t seed, double duration);

}  // namespace usynth
