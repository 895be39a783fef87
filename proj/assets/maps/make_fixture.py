#!/usr/bin/env python3
"""Regenerates fixture_city.osm, the small hand-countable test extract.

Grid town around (40.0 N, 116.3 E): 4 x 3 intersections, 17 road edges,
18 buildings, 2 parks, and 3 non-road open ways that classifiers must skip.
The census printed at the end is documented in fixture_city_census.md and
asserted by the test suite.
"""

import math

ORIGIN_LAT = 40.0
ORIGIN_LON = 116.3
EARTH_R = 6378137.0

M_PER_DEG_LAT = EARTH_R * math.pi / 180.0
M_PER_DEG_LON = M_PER_DEG_LAT * math.cos(math.radians(ORIGIN_LAT))

COLS = [0.0, 120.0, 240.0, 360.0]
ROWS = [0.0, 100.0, 200.0]


def to_latlon(x, y):
    return (ORIGIN_LAT + y / M_PER_DEG_LAT, ORIGIN_LON + x / M_PER_DEG_LON)


class Builder:
    def __init__(self):
        self.nodes = []  # (id, lat, lon)
        self.ways = []  # (id, [node ids], {tags})
        self.next_node = 1
        self.next_way = 100
        self.index = {}

    def node(self, x, y):
        key = (round(x, 3), round(y, 3))
        if key in self.index:
            return self.index[key]
        lat, lon = to_latlon(x, y)
        nid = self.next_node
        self.next_node += 1
        self.nodes.append((nid, lat, lon))
        self.index[key] = nid
        return nid

    def way(self, points, tags, close=False):
        refs = [self.node(x, y) for x, y in points]
        if close:
            refs.append(refs[0])
        wid = self.next_way
        self.next_way += 1
        self.ways.append((wid, refs, tags))
        return wid


def main():
    b = Builder()

    # --- road grid ------------------------------------------------------
    row_tags = [
        {"highway": "residential", "name": "South Lane"},
        {"highway": "secondary", "lanes": "2", "name": "Center Street", "maxspeed": "50"},
        {"highway": "primary", "lanes": "4", "name": "North Loop", "maxspeed": "60"},
    ]
    roads = 0
    for r, y in enumerate(ROWS):
        for c in range(len(COLS) - 1):
            tags = dict(row_tags[r])
            pts = [(COLS[c], y), (COLS[c + 1], y)]
            # one mid-jog on the center row for polyline realism
            if r == 1 and c == 1:
                pts = [(COLS[c], y), ((COLS[c] + COLS[c + 1]) / 2, y + 6.0), (COLS[c + 1], y)]
            if r == 1 and c == 0:
                tags["width"] = "14"
                tags["lanes"] = "4"
            b.way(pts, tags)
            roads += 1
    for c, x in enumerate(COLS):
        for r in range(len(ROWS) - 1):
            tags = {"highway": "tertiary", "name": f"Avenue {c}"}
            if c == 2 and r == 0:
                tags["oneway"] = "yes"
            b.way([(x, ROWS[r]), (x, ROWS[r + 1])], tags)
            roads += 1

    # --- buildings: 3 per block -----------------------------------------
    buildings = 0
    kinds = ["yes", "residential", "commercial"]
    for bx in range(3):
        for by in range(2):
            x0 = COLS[bx] + 18.0
            y0 = ROWS[by] + 16.0
            for i in range(3):
                w, h = 24.0, 16.0
                ox = x0 + i * 30.0
                tag = {"building": kinds[(bx + by + i) % 3]}
                if (bx + by + i) % 2 == 0:
                    tag["building:levels"] = str(3 + (i * 2 + bx) % 5)
                b.way([(ox, y0), (ox + w, y0), (ox + w, y0 + h), (ox, y0 + h)], tag, close=True)
                buildings += 1

    # --- parks -----------------------------------------------------------
    parks = 0
    for bx, by in [(0, 1), (2, 0)]:
        x0 = COLS[bx] + 22.0
        y0 = ROWS[by] + 52.0
        b.way([(x0, y0), (x0 + 40.0, y0), (x0 + 40.0, y0 + 32.0), (x0, y0 + 32.0)],
              {"leisure": "park"}, close=True)
        parks += 1

    # --- open non-road ways (skipped by the classifier) ------------------
    b.way([(-30.0, -20.0), (150.0, -24.0), (380.0, -18.0)], {"railway": "rail"})
    b.way([(-25.0, 215.0), (200.0, 226.0), (390.0, 221.0)], {"waterway": "stream"})
    b.way([(95.0, 16.0), (95.0, 84.0)], {"barrier": "fence"})
    skipped = 3

    # --- emit -------------------------------------------------------------
    lats = [n[1] for n in b.nodes]
    lons = [n[2] for n in b.nodes]
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    lines.append('<osm version="0.6" generator="make_fixture.py">')
    lines.append(
        f'  <bounds minlat="{min(lats):.7f}" minlon="{min(lons):.7f}"'
        f' maxlat="{max(lats):.7f}" maxlon="{max(lons):.7f}"/>'
    )
    for nid, lat, lon in b.nodes:
        lines.append(f'  <node id="{nid}" lat="{lat:.7f}" lon="{lon:.7f}"/>')
    for wid, refs, tags in b.ways:
        lines.append(f'  <way id="{wid}">')
        for ref in refs:
            lines.append(f'    <nd ref="{ref}"/>')
        for k, v in tags.items():
            lines.append(f'    <tag k="{k}" v="{v}"/>')
        lines.append("  </way>")
    lines.append("</osm>")

    with open("fixture_city.osm", "w") as f:
        f.write("\n".join(lines) + "\n")

    junctions = 12  # every grid intersection joins >= 2 road-way endpoints
    print(f"nodes: {len(b.nodes)}")
    print(f"ways: {len(b.ways)} = {roads} roads + {buildings} buildings + {parks} parks + {skipped} skipped")
    print(f"junctions: {junctions}")


if __name__ == "__main__":
    main()
