#include "usynth/road_network.hpp"

#include <algorithm>
#include <map>

#include "usynth/error.hpp"

namespace usynth {

namespace {

std::optional<double> ParseNumber(const std::string& s)
{
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    // Tolerate unit suffixes ("30 mph" is not handled, bare numbers are km/h).
    if (used == 0) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

RoadSegment MakeSegment(const OsmWay& way, const MapData& map, GeoPoint origin)
{
  RoadSegment seg;
  seg.id = way.id;
  for (const std::int64_t ref : way.nodeRefs) {
    const Vec2 p = ProjectGeodetic(map.nodes.at(ref).position, origin);
    if (!seg.centerline.empty() && Length(p - seg.centerline.back()) < 1e-9) continue;
    seg.centerline.push_back(p);
  }

  if (const auto it = way.tags.find("lanes"); it != way.tags.end()) {
    if (const auto lanes = ParseNumber(it->second); lanes && *lanes >= 1.0)
      seg.laneCount = static_cast<int>(*lanes);
  }
  if (const auto it = way.tags.find("width"); it != way.tags.end()) {
    if (const auto width = ParseNumber(it->second); width && *width > 0.0)
      seg.laneWidth = *width / seg.laneCount;
  }
  if (const auto it = way.tags.find("oneway"); it != way.tags.end()) {
    if (it->second == "yes" || it->second == "true" || it->second == "1")
      seg.direction = RoadDirection::kOneWay;
  }
  if (const auto it = way.tags.find("name"); it != way.tags.end()) seg.name = it->second;
  if (const auto it = way.tags.find("maxspeed"); it != way.tags.end()) {
    if (const auto kmh = ParseNumber(it->second); kmh && *kmh > 0.0)
      seg.speedLimit = *kmh / 3.6;  // OSM maxspeed defaults to km/h
  }
  return seg;
}

}  // namespace

RoadNetwork BuildRoadNetwork(const MapData& map, GeoPoint origin, NetworkReport* report)
{
  RoadNetwork net;
  NetworkReport localReport;

  // node id -> incident road segment ids (endpoint incidence only)
  std::map<std::int64_t, std::vector<std::int64_t>> endpointUse;

  for (const OsmWay& way : map.ways) {
    if (way.Closed()) {
      Footprint fp;
      fp.wayId = way.id;
      fp.tags = way.tags;
      for (std::size_t i = 0; i + 1 < way.nodeRefs.size(); ++i) {  // drop closing ref
        const Vec2 p = ProjectGeodetic(map.nodes.at(way.nodeRefs[i]).position, origin);
        if (!fp.polygon.empty() && Length(p - fp.polygon.back()) < 1e-9) continue;
        fp.polygon.push_back(p);
      }
      if (fp.polygon.size() < 3 || !IsSimplePolygon(fp.polygon)) {
        localReport.skippedWayIds.push_back(way.id);
        continue;
      }
      if (!IsCounterClockwise(fp.polygon))
        std::reverse(fp.polygon.begin(), fp.polygon.end());
      net.footprints.push_back(std::move(fp));
      continue;
    }

    if (way.tags.contains("highway")) {
      RoadSegment seg = MakeSegment(way, map, origin);
      if (seg.centerline.size() < 2) {
        localReport.skippedWayIds.push_back(way.id);
        continue;
      }
      endpointUse[way.nodeRefs.front()].push_back(seg.id);
      endpointUse[way.nodeRefs.back()].push_back(seg.id);
      net.segments.push_back(std::move(seg));
      continue;
    }

    localReport.skippedWayIds.push_back(way.id);
  }

  for (const auto& [nodeId, segIds] : endpointUse) {
    if (segIds.size() < 2) continue;
    Junction j;
    j.position = ProjectGeodetic(map.nodes.at(nodeId).position, origin);
    j.segmentIds = segIds;
    std::sort(j.segmentIds.begin(), j.segmentIds.end());
    net.junctions.push_back(std::move(j));
  }

  localReport.segmentCount = net.segments.size();
  localReport.footprintCount = net.footprints.size();
  localReport.skippedCount = localReport.skippedWayIds.size();
  if (report) *report = std::move(localReport);
  return net;
}

std::vector<Polyline2> LaneCenterlines(const RoadSegment& seg)
{
  if (seg.centerline.size() < 2 || PolylineLength(seg.centerline) <= 0.0)
    throw ValidationError("segment " + std::to_string(seg.id) + " has a degenerate centerline");

  std::vector<Polyline2> lanes;
  lanes.reserve(seg.laneCount);
  for (int i = 0; i < seg.laneCount; ++i) {
    const double offset = (i - (seg.laneCount - 1) / 2.0) * seg.laneWidth;
    // Lane 0 is leftmost in travel direction; positive offsets go right.
    lanes.push_back(offset == 0.0 ? seg.centerline : OffsetPolyline(seg.centerline, offset));
  }
  return lanes;
}

}  // namespace usynth
