#include <doctest.h>

#include <cmath>
#include <string>

#include "usynth/error.hpp"
#include "usynth/osm.hpp"

using namespace usynth;

namespace {

// Independent great-circle oracle on the same sphere radius.
double Haversine(GeoPoint a, GeoPoint b)
{
  const double p1 = DegToRad(a.lat), p2 = DegToRad(b.lat);
  const double dp = p2 - p1, dl = DegToRad(b.lon - a.lon);
  const double h =
      std::sin(dp / 2) * std::sin(dp / 2) + std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

const char* kSmallExtract = R"(<?xml version="1.0" encoding="UTF-8"?>
<osm version="0.6" generator="test">
  <bounds minlat="40.0000000" minlon="116.3000000" maxlat="40.0020000" maxlon="116.3020000"/>
  <node id="1" lat="40.0000000" lon="116.3000000"/>
  <node id="2" lat="40.0005000" lon="116.3005000"/>
  <node id="3" lat="40.0010000" lon="116.3010000"/>
  <node id="4" lat="40.0015000" lon="116.3015000"/>
  <way id="10">
    <nd ref="1"/>
    <nd ref="2"/>
    <nd ref="3"/>
    <nd ref="4"/>
    <tag k="highway" v="residential"/>
    <tag k="exotic:tag" v="kept &amp; preserved"/>
  </way>
</osm>
)";

}  // namespace

TEST_CASE("small extract: 4 nodes, one open residential way")
{
  const MapData map = ParseOsm(kSmallExtract);
  CHECK(map.nodes.size() == 4);
  REQUIRE(map.ways.size() == 1);
  const OsmWay& way = map.ways.front();
  CHECK(way.id == 10);
  CHECK_FALSE(way.Closed());
  CHECK(way.tags.at("highway") == "residential");
  // Unknown tags preserved verbatim, entities decoded.
  CHECK(way.tags.at("exotic:tag") == "kept & preserved");
  CHECK(map.bounds.minLat == doctest::Approx(40.0));
}

TEST_CASE("empty osm document")
{
  const MapData map = ParseOsm("<osm version=\"0.6\"></osm>");
  CHECK(map.nodes.empty());
  CHECK(map.ways.empty());
}

TEST_CASE("way referencing a missing node names the way")
{
  const std::string doc = R"(<osm>
    <node id="1" lat="40.0" lon="116.3"/>
    <way id="77"><nd ref="1"/><nd ref="99"/></way>
  </osm>)";
  CHECK_THROWS_WITH_AS(ParseOsm(doc), doctest::Contains("way 77"), ValidationError);
}

TEST_CASE("malformed XML reports the line")
{
  const std::string doc = "<osm>\n  <node id=\"1\" lat=\"40\" lon=116.3/>\n</osm>";
  try {
    ParseOsm(doc);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.Line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("projection of the origin is the origin")
{
  const GeoPoint origin{40.0, 116.3};
  const Vec2 p = ProjectGeodetic(origin, origin);
  CHECK(p.x == 0.0);
  CHECK(p.y == 0.0);
}

TEST_CASE("one meter north")
{
  const GeoPoint origin{40.0, 116.3};
  const GeoPoint north{40.0 + 1.0 / 111319.49, 116.3};
  const Vec2 p = ProjectGeodetic(north, origin);
  CHECK(p.y == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(p.x == 0.0);
}

TEST_CASE("east is positive x")
{
  const GeoPoint origin{40.0, 116.3};
  const Vec2 p = ProjectGeodetic({40.0, 116.301}, origin);
  CHECK(p.x > 0.0);
  CHECK(p.y == 0.0);
}

TEST_CASE("projection is locally isometric against the haversine oracle")
{
  const GeoPoint origin{40.0, 116.3};
  const GeoPoint points[] = {
      {40.0, 116.3},        {40.001, 116.3005}, {40.004, 116.31},
      {39.9975, 116.2955},  {40.0063, 116.3},   {40.0, 116.309},
  };
  for (const GeoPoint& a : points) {
    for (const GeoPoint& b : points) {
      const double ground = Haversine(a, b);
      if (ground == 0.0 || ground > 1000.0) continue;
      const double planar = Length(ProjectGeodetic(a, origin) - ProjectGeodetic(b, origin));
      CHECK(std::abs(planar - ground) / ground < 0.001);
    }
  }
}

TEST_CASE("parse -> serialize -> parse round trip")
{
  const MapData first = ParseOsm(kSmallExtract);
  const MapData second = ParseOsm(SerializeOsm(first));
  CHECK(first == second);
}
