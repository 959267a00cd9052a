#!/usr/bin/env python3
"""Writes the test fixtures and sample data.

Shapefiles and dbf tables are encoded with `struct` directly from the
format layout, independent of the Rust reader. Each fixture gets an
`.expected.json` holding the feature list the reader must produce:
rings closed, outer rings counterclockwise, holes clockwise.

Usage: python3 scripts/gen_fixtures.py  (from the repository root)
"""

import json
import math
import os
import random
import struct

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIX = os.path.join(ROOT, "crates", "core", "tests", "fixtures")
DATA = os.path.join(ROOT, "data")

NULL, POINT, POLYLINE, POLYGON, MULTIPOINT = 0, 1, 3, 5, 8


def signed_area(ring):
    return 0.5 * sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(ring, ring[1:]))


def shape_content(kind, geom):
    if kind == NULL:
        return struct.pack("<i", NULL)
    if kind == POINT:
        return struct.pack("<idd", POINT, *geom)
    if kind == MULTIPOINT:
        xs = [p[0] for p in geom]
        ys = [p[1] for p in geom]
        body = struct.pack("<i4di", MULTIPOINT, min(xs), min(ys), max(xs), max(ys), len(geom))
        return body + b"".join(struct.pack("<dd", *p) for p in geom)
    parts = geom
    pts = [p for part in parts for p in part]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    body = struct.pack("<i4dii", kind, min(xs), min(ys), max(xs), max(ys), len(parts), len(pts))
    offset = 0
    for part in parts:
        body += struct.pack("<i", offset)
        offset += len(part)
    return body + b"".join(struct.pack("<dd", *p) for p in pts)


def write_shp(path, shape_type, records):
    """records: list of (kind, geometry)."""
    contents = [shape_content(k, g) for k, g in records]
    body = b""
    for i, c in enumerate(contents, start=1):
        body += struct.pack(">ii", i, len(c) // 2) + c
    pts = []
    for k, g in records:
        if k == POINT:
            pts.append(g)
        elif k == MULTIPOINT:
            pts.extend(g)
        elif k != NULL:
            pts.extend(p for part in g for p in part)
    box = (
        min(p[0] for p in pts),
        min(p[1] for p in pts),
        max(p[0] for p in pts),
        max(p[1] for p in pts),
    )
    length_words = (100 + len(body)) // 2
    header = struct.pack(">7i", 9994, 0, 0, 0, 0, 0, length_words)
    header += struct.pack("<2i", 1000, shape_type)
    header += struct.pack("<8d", *box, 0, 0, 0, 0)
    with open(path, "wb") as f:
        f.write(header + body)


def write_dbf(path, fields, rows, deleted=()):
    """fields: (name, type, length, decimals); rows: lists of raw strings."""
    n = len(rows)
    header_len = 32 + 32 * len(fields) + 1
    record_len = 1 + sum(f[2] for f in fields)
    out = struct.pack("<B3BIHH20x", 3, 124, 1, 1, n, header_len, record_len)
    for name, typ, length, dec in fields:
        raw = name.encode("ascii").ljust(11, b"\0")
        out += struct.pack("<11sc4xBB14x", raw, typ.encode("ascii"), length, dec)
    out += b"\r"
    for i, row in enumerate(rows):
        out += b"*" if i in deleted else b" "
        for (name, typ, length, dec), value in zip(fields, row):
            raw = value.encode("latin-1")
            assert len(raw) <= length, (name, value)
            # Numbers are right-aligned, text left-aligned.
            out += raw.rjust(length) if typ in "NF" else raw.ljust(length)
    out += b"\x1a"
    with open(path, "wb") as f:
        f.write(out)


def closed(ring):
    return ring if ring[0] == ring[-1] else ring + [ring[0]]


def normalized(ring, outer):
    ring = closed(ring)
    a = signed_area(ring)
    if (outer and a < 0) or (not outer and a > 0):
        ring = ring[::-1]
    return ring


def dump(path, value):
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(value, ensure_ascii=False, separators=(",", ":")))
        f.write("\n")


def feature(gtype, coords, attrs):
    return {"geometry": {"type": gtype, "coordinates": coords}, "attributes": attrs}


def shapefile_fixtures():
    d = os.path.join(FIX, "shp")
    os.makedirs(d, exist_ok=True)

    # Points with mixed attribute types, one deleted record and a null shape.
    pts = [(12.5, 55.75), (10.25, 56.125), (-3.5, 40.0), (9.0, 57.0)]
    fields = [("NAME", "C", 16, 0), ("POP", "N", 8, 0), ("AREA", "N", 10, 3), ("OPENED", "D", 8, 0)]
    rows = [
        ["København", "602481", "86.200", "17000101"],
        ["Aarhus", "", "91.000", ""],
        ["Madrid", "3223334", "604.300", "15610101"],
        ["gone", "1", "1.000", "20000101"],
    ]
    write_shp(os.path.join(d, "points.shp"), POINT,
              [(POINT, pts[0]), (POINT, pts[1]), (NULL, None), (POINT, pts[3])])
    # The third record is a null shape, so the third attribute row is unused.
    write_dbf(os.path.join(d, "points.dbf"), fields, rows, deleted={3})
    expected = [
        feature("Point", list(pts[0]), {"NAME": "København", "POP": 602481, "AREA": 86.2, "OPENED": "17000101"}),
        feature("Point", list(pts[1]), {"NAME": "Aarhus", "POP": None, "AREA": 91.0, "OPENED": ""}),
        feature("Point", list(pts[3]), {}),
    ]
    dump(os.path.join(d, "points.expected.json"), {"features": expected, "skipped": 0})

    # Polygons: a square with a hole, and a two-island record. Shapefile
    # rings run clockwise for outer boundaries.
    outer = [(0.0, 0.0), (0.0, 4.0), (4.0, 4.0), (4.0, 0.0), (0.0, 0.0)]
    hole = [(1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (1.0, 2.0), (1.0, 1.0)]
    isl1 = [(10.0, 10.0), (10.0, 11.0), (11.0, 11.0), (11.0, 10.0), (10.0, 10.0)]
    isl2 = [(12.0, 10.0), (12.0, 10.5), (12.5, 10.0), (12.0, 10.0)]
    assert signed_area(outer) < 0 and signed_area(hole) > 0
    write_shp(os.path.join(d, "polygons.shp"), POLYGON, [(POLYGON, [outer, hole]), (POLYGON, [isl1, isl2])])
    write_dbf(os.path.join(d, "polygons.dbf"), [("ID", "N", 4, 0), ("KIND", "C", 8, 0)],
              [["1", "holed"], ["2", "islands"]])
    to_list = lambda r: [list(p) for p in r]
    expected = [
        feature("Polygon", [to_list(normalized(outer, True)), to_list(normalized(hole, False))],
                {"ID": 1, "KIND": "holed"}),
        feature("Polygon", [to_list(normalized(isl1, True)), to_list(normalized(isl2, True))],
                {"ID": 2, "KIND": "islands"}),
    ]
    dump(os.path.join(d, "polygons.expected.json"), {"features": expected, "skipped": 0})

    # Three place-name polylines, one with two parts, plus a multipoint
    # record the reader does not support.
    lines = [
        [[(8.5, 55.5), (9.0, 55.75), (9.5, 55.5)]],
        [[(10.0, 56.0), (10.5, 56.25)], [(10.75, 56.25), (11.0, 56.5), (11.25, 56.25)]],
        [[(12.0, 55.0), (12.25, 55.125)]],
    ]
    write_shp(os.path.join(d, "lines.shp"), POLYLINE,
              [(POLYLINE, lines[0]), (POLYLINE, lines[1]), (MULTIPOINT, [(1.0, 1.0), (2.0, 2.0)]),
               (POLYLINE, lines[2])])
    write_dbf(os.path.join(d, "lines.dbf"), [("STEDNAVN", "C", 24, 0)],
              [["Ribe Å"], ["Djursland"], ["skipped"], ["Øresund"]])
    expected = [
        feature("PolyLine", [to_list(p) for p in lines[0]], {"STEDNAVN": "Ribe Å"}),
        feature("PolyLine", [to_list(p) for p in lines[1]], {"STEDNAVN": "Djursland"}),
        feature("PolyLine", [to_list(p) for p in lines[2]], {"STEDNAVN": "Øresund"}),
    ]
    dump(os.path.join(d, "lines.expected.json"), {"features": expected, "skipped": 1})


def geojson_fixtures():
    d = os.path.join(FIX, "geojson")
    os.makedirs(d, exist_ok=True)

    def box(x0, y0, x1, y1):
        return [[x0, y0], [x1, y0], [x1, y1], [x0, y1], [x0, y0]]

    # Counties laid out on a 3x2 grid; the last one has no unemployment rate.
    counties = []
    names = ["Autauga", "Baldwin", "Barbour", "Bibb", "Blount", "Unmapped"]
    for i, name in enumerate(names):
        x0 = -88.0 + (i % 3) * 1.0
        y0 = 31.0 + (i // 3) * 1.0
        counties.append({
            "type": "Feature",
            "properties": {"STATE": "01", "COUNTY": "%03d" % (2 * i + 1), "NAME": name},
            "geometry": {"type": "Polygon", "coordinates": [box(x0, y0, x0 + 1.0, y0 + 1.0)]},
        })
    dump(os.path.join(d, "counties.geojson"), {"type": "FeatureCollection", "features": counties})
    rates = {"1001": 5.1, "1003": 4.9, "1005": 8.6, "1007": 6.2, "1009": 5.3}
    dump(os.path.join(d, "unemployment.json"), rates)

    # Mixed geometries for the parser round trip.
    hole_cw = [[0.25, 0.25], [0.25, 0.75], [0.75, 0.75], [0.75, 0.25], [0.25, 0.25]]
    mixed = {
        "type": "FeatureCollection",
        "features": [
            {"type": "Feature", "properties": {"name": "pt", "n": 1},
             "geometry": {"type": "Point", "coordinates": [12.5, 55.5]}},
            {"type": "Feature", "properties": {"name": "road"},
             "geometry": {"type": "LineString", "coordinates": [[0.0, 0.0], [1.0, 0.5], [2.0, 0.0]]}},
            {"type": "Feature", "properties": {"name": "roads"},
             "geometry": {"type": "MultiLineString",
                          "coordinates": [[[0.0, 1.0], [1.0, 1.0]], [[2.0, 1.0], [3.0, 1.5]]]}},
            {"type": "Feature", "properties": {"name": "holed"},
             "geometry": {"type": "Polygon", "coordinates": [box(0.0, 0.0, 1.0, 1.0), hole_cw]}},
            {"type": "Feature", "properties": None,
             "geometry": {"type": "MultiPolygon",
                          "coordinates": [[box(5.0, 5.0, 6.0, 6.0)], [box(7.0, 5.0, 7.5, 5.5)]]}},
            {"type": "Feature", "properties": {"name": "nothing"}, "geometry": None},
            {"type": "Feature", "properties": {"name": "unsupported"},
             "geometry": {"type": "MultiPoint", "coordinates": [[0.0, 0.0]]}},
        ],
    }
    dump(os.path.join(d, "mixed.geojson"), mixed)
    expected = [
        feature("Point", [12.5, 55.5], {"name": "pt", "n": 1}),
        feature("PolyLine", [[[0.0, 0.0], [1.0, 0.5], [2.0, 0.0]]], {"name": "road"}),
        feature("PolyLine", [[[0.0, 1.0], [1.0, 1.0]], [[2.0, 1.0], [3.0, 1.5]]], {"name": "roads"}),
        feature("Polygon", [box(0.0, 0.0, 1.0, 1.0), hole_cw], {"name": "holed"}),
        feature("Polygon", [box(5.0, 5.0, 6.0, 6.0), box(7.0, 5.0, 7.5, 5.5)], {}),
    ]
    dump(os.path.join(d, "mixed.expected.json"), {"features": expected, "skipped": 2})


def sample_data():
    """Synthetic CSVs shaped like common point datasets."""
    os.makedirs(DATA, exist_ok=True)
    rng = random.Random(20150101)

    def cluster(n, lat, lon, sd):
        return [(rng.gauss(lat, sd), rng.gauss(lon, sd * 1.7)) for _ in range(n)]

    with open(os.path.join(DATA, "bus.csv"), "w") as f:
        f.write("name,lat,lon\n")
        for i, (lat, lon) in enumerate(cluster(800, 55.68, 12.55, 0.04)):
            f.write("stop %d,%.6f,%.6f\n" % (i, lat, lon))

    with open(os.path.join(DATA, "towers.csv"), "w") as f:
        f.write("id,lat,lon\n")
        pts = []
        for lat, lon, n in [(55.68, 12.57, 3000), (56.16, 10.20, 1500), (55.40, 10.39, 1000),
                            (57.05, 9.92, 800), (55.48, 8.45, 500)]:
            pts += cluster(n, lat, lon, 0.12)
        for i, (lat, lon) in enumerate(pts):
            f.write("%d,%.6f,%.6f\n" % (i, lat, lon))

    airports = [("CPH", 55.618, 12.656), ("LHR", 51.470, -0.454), ("CDG", 49.010, 2.548),
                ("FRA", 50.033, 8.571), ("AMS", 52.310, 4.768), ("MAD", 40.472, -3.561),
                ("FCO", 41.800, 12.239), ("ARN", 59.652, 17.919), ("OSL", 60.194, 11.100),
                ("HEL", 60.317, 24.963), ("JFK", 40.640, -73.779), ("DXB", 25.253, 55.364)]
    with open(os.path.join(DATA, "flights.csv"), "w") as f:
        f.write("from,to,lat_departure,lon_departure,lat_arrival,lon_arrival\n")
        for _ in range(400):
            a, b = rng.sample(airports, 2)
            f.write("%s,%s,%.3f,%.3f,%.3f,%.3f\n" % (a[0], b[0], a[1], a[2], b[1], b[2]))

    with open(os.path.join(DATA, "stations.csv"), "w") as f:
        f.write("name,lat,lon\n")
        for i in range(60):
            ang = 2 * math.pi * i / 60
            r = 0.05 + 0.15 * rng.random()
            f.write("station %d,%.6f,%.6f\n" % (i, 55.68 + r * math.sin(ang), 12.57 + 1.7 * r * math.cos(ang)))

    from PIL import Image, ImageDraw
    img = Image.new("RGBA", (16, 16), (0, 0, 0, 0))
    ImageDraw.Draw(img).ellipse((1, 1, 14, 14), fill=(20, 90, 200, 255), outline=(255, 255, 255, 255))
    img.save(os.path.join(DATA, "m.png"))


if __name__ == "__main__":
    shapefile_fixtures()
    geojson_fixtures()
    sample_data()
