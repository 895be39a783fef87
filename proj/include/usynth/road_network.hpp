#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "usynth/geometry.hpp"
#include "usynth/osm.hpp"

namespace usynth {

enum class RoadDirection { kTwoWay, kOneWay };

struct RoadSegment {
  std::int64_t id = 0;            // source way id
  Polyline2 centerline;           // planar meters, >= 2 distinct points
  int laneCount = 2;
  double laneWidth = 3.5;         // meters
  RoadDirection direction = RoadDirection::kTwoWay;
  std::optional<std::string> name;
  std::optional<double> speedLimit;  // m/s

  double Width() const { return laneCount * laneWidth; }
};

struct Junction {
  Vec2 position;
  std::vector<std::int64_t> segmentIds;  // incident segments, endpoint touches position
};

// Closed-way region: building footprints plus parks, lakes and other closed
// areas that render as flat colored ground.
struct Footprint {
  std::int64_t wayId = 0;
  Polygon2 polygon;  // simple, counterclockwise
  TagMap tags;

  bool IsBuilding() const { return tags.contains("building"); }
};

struct RoadNetwork {
  std::vector<RoadSegment> segments;
  std::vector<Junction> junctions;
  std::vector<Footprint> footprints;
};

struct NetworkReport {
  std::size_t segmentCount = 0;
  std::size_t footprintCount = 0;
  std::size_t skippedCount = 0;
  std::vector<std::int64_t> skippedWayIds;
};

// Classifies ways: open ways tagged highway=* become road segments (lane
// defaults 2 x 3.5 m when untagged), closed ways become footprints, the rest
// is skipped and counted in the report.
RoadNetwork BuildRoadNetwork(const MapData& map, GeoPoint origin, NetworkReport* report = nullptr);

// One polyline per lane, ordered left to right in travel direction, offset
// (i - (laneCount - 1) / 2) * laneWidth from the centerline.
std::vector<Polyline2> LaneCenterlines(const RoadSegment& seg);

}  // namespace usynth
