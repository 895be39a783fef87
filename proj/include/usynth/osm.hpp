#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "usynth/geometry.hpp"

namespace usynth {

using TagMap = std::map<std::string, std::string>;

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
  bool operator==(const GeoPoint&) const = default;
};

struct GeoBounds {
  double minLat = 0.0, minLon = 0.0, maxLat = 0.0, maxLon = 0.0;
  bool operator==(const GeoBounds&) const = default;
};

struct OsmNode {
  GeoPoint position;
  TagMap tags;
  bool operator==(const OsmNode&) const = default;
};

// A way is a directional node sequence; closed means first ref == last ref.
struct OsmWay {
  std::int64_t id = 0;
  std::vector<std::int64_t> nodeRefs;
  TagMap tags;

  bool Closed() const
  {
    return nodeRefs.size() >= 2 && nodeRefs.front() == nodeRefs.back();
  }
  bool operator==(const OsmWay&) const = default;
};

struct MapData {
  std::map<std::int64_t, OsmNode> nodes;
  std::vector<OsmWay> ways;
  GeoBounds bounds;

  bool operator==(const MapData&) const = default;
};

// Parses an OSM XML v0.6 document. Unknown tags are preserved verbatim.
// Throws ParseError with a line number on malformed XML and ValidationError
// when a way references a missing node or has fewer than two node refs.
MapData ParseOsm(const std::string& xmlText);

MapData ParseOsmFile(const std::string& path);

// Writes MapData back out as OSM XML. Parse(Serialize(m)) == m.
std::string SerializeOsm(const MapData& map);

// Local tangent-plane projection. x grows east, y grows north, origin maps
// to (0, 0). Sized for city extracts (|lat - origin.lat| < 1 degree).
inline constexpr double kEarthRadiusM = 6378137.0;

inline Vec2 ProjectGeodetic(GeoPoint p, GeoPoint origin)
{
  const double x = kEarthRadiusM * std::cos(DegToRad(origin.lat)) * DegToRad(p.lon - origin.lon);
  const double y = kEarthRadiusM * DegToRad(p.lat - origin.lat);
  return {x, y};
}

inline GeoPoint UnprojectGeodetic(Vec2 p, GeoPoint origin)
{
  const double lat = origin.lat + RadToDeg(p.y / kEarthRadiusM);
  const double lon =
      origin.lon + RadToDeg(p.x / (kEarthRadiusM * std::cos(DegToRad(origin.lat))));
  return {lat, lon};
}

inline GeoPoint BoundsCenter(const GeoBounds& b)
{
  return {(b.minLat + b.maxLat) / 2.0, (b.minLon + b.maxLon) / 2.0};
}

}  // namespace usynth
