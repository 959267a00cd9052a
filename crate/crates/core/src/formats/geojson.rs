use std::path::Path;

use serde_json::{json, Map, Value};

use super::{normalize_ring, Geometry, LonLat, ParsedFeatures, VectorFeature};
use crate::{Error, Result};

pub fn read_geojson(path: impl AsRef<Path>) -> Result<ParsedFeatures> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_geojson(&text)
}

/// Parses a FeatureCollection, a single Feature or a bare geometry.
///
/// Supported geometries are Point, LineString, MultiLineString, Polygon and
/// MultiPolygon. Features with other or missing geometry are skipped and
/// counted. Properties are carried over unchanged.
pub fn parse_geojson(text: &str) -> Result<ParsedFeatures> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::GeoJson(e.to_string()))?;
    let mut out = ParsedFeatures::default();
    match type_of(&root)? {
        "FeatureCollection" => {
            let features = root
                .get("features")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::GeoJson("FeatureCollection without a features array".into()))?;
            for f in features {
                push_feature(f, &mut out)?;
            }
        }
        "Feature" => push_feature(&root, &mut out)?,
        _ => match parse_geometry(&root)? {
            Some(geometry) => out.features.push(VectorFeature::new(geometry, Map::new())),
            None => out.skipped += 1,
        },
    }
    Ok(out)
}

fn type_of(v: &Value) -> Result<&str> {
    v.get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::GeoJson("object without a \"type\" string".into()))
}

fn push_feature(f: &Value, out: &mut ParsedFeatures) -> Result<()> {
    if type_of(f)? != "Feature" {
        return Err(Error::GeoJson(format!("expected a Feature, found {}", type_of(f)?)));
    }
    let attributes = match f.get("properties") {
        Some(Value::Object(m)) => m.clone(),
        Some(Value::Null) | None => Map::new(),
        Some(_) => return Err(Error::GeoJson("properties must be an object".into())),
    };
    let geometry = match f.get("geometry") {
        Some(Value::Null) | None => None,
        Some(g) => parse_geometry(g)?,
    };
    match geometry {
        Some(geometry) => out.features.push(VectorFeature::new(geometry, attributes)),
        None => out.skipped += 1,
    }
    Ok(())
}

fn parse_geometry(g: &Value) -> Result<Option<Geometry>> {
    let kind = type_of(g)?;
    let coords = || {
        g.get("coordinates")
            .ok_or_else(|| Error::GeoJson(format!("{kind} without coordinates")))
    };
    let geometry = match kind {
        "Point" => Geometry::Point(position(coords()?)?),
        "LineString" => Geometry::PolyLine(vec![positions(coords()?)?]),
        "MultiLineString" => Geometry::PolyLine(
            array(coords()?)?
                .iter()
                .map(positions)
                .collect::<Result<_>>()?,
        ),
        "Polygon" => Geometry::Polygon(polygon_rings(coords()?)?),
        "MultiPolygon" => {
            let mut rings = Vec::new();
            for poly in array(coords()?)? {
                rings.extend(polygon_rings(poly)?);
            }
            Geometry::Polygon(rings)
        }
        other => {
            log::warn!("skipping unsupported geometry type {other}");
            return Ok(None);
        }
    };
    if !geometry.is_finite() {
        log::warn!("skipping {kind} with non-finite coordinates");
        return Ok(None);
    }
    Ok(Some(geometry))
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::GeoJson(format!("expected an array, found {v}")))
}

fn position(v: &Value) -> Result<LonLat> {
    let a = array(v)?;
    match (a.first().and_then(Value::as_f64), a.get(1).and_then(Value::as_f64)) {
        (Some(lon), Some(lat)) => Ok([lon, lat]),
        _ => Err(Error::GeoJson(format!("invalid position {v}"))),
    }
}

fn positions(v: &Value) -> Result<Vec<LonLat>> {
    array(v)?.iter().map(position).collect()
}

fn polygon_rings(v: &Value) -> Result<Vec<Vec<LonLat>>> {
    array(v)?
        .iter()
        .enumerate()
        .map(|(i, r)| Ok(normalize_ring(positions(r)?, i == 0)))
        .collect()
}

fn coords_json(ring: &[LonLat]) -> Value {
    Value::Array(ring.iter().map(|p| json!([p[0], p[1]])).collect())
}

/// Serializes features as a FeatureCollection. Polygon ring lists are split
/// into polygons at each counterclockwise ring.
pub fn to_geojson(features: &[VectorFeature]) -> Value {
    let features: Vec<Value> = features
        .iter()
        .map(|f| {
            let geometry = match &f.geometry {
                Geometry::Point(p) => json!({"type": "Point", "coordinates": [p[0], p[1]]}),
                Geometry::PolyLine(parts) if parts.len() == 1 => {
                    json!({"type": "LineString", "coordinates": coords_json(&parts[0])})
                }
                Geometry::PolyLine(parts) => json!({
                    "type": "MultiLineString",
                    "coordinates": parts.iter().map(|p| coords_json(p)).collect::<Vec<_>>(),
                }),
                Geometry::Polygon(rings) => {
                    let mut polys: Vec<Vec<Value>> = Vec::new();
                    for ring in rings {
                        let outer = crate::geometry::polygon_area(ring) >= 0.0;
                        match polys.last_mut() {
                            Some(p) if !outer => p.push(coords_json(ring)),
                            _ => polys.push(vec![coords_json(ring)]),
                        }
                    }
                    if polys.len() == 1 {
                        json!({"type": "Polygon", "coordinates": polys.pop().unwrap()})
                    } else {
                        json!({"type": "MultiPolygon", "coordinates": polys})
                    }
                }
            };
            json!({"type": "Feature", "properties": f.attributes, "geometry": geometry})
        })
        .collect();
    json!({"type": "FeatureCollection", "features": features})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_collection() {
        let p = parse_geojson(r#"{"type":"FeatureCollection","features":[]}"#).unwrap();
        assert!(p.features.is_empty());
        assert_eq!(p.skipped, 0);
    }

    #[test]
    fn polygon_with_properties() {
        let p = parse_geojson(
            r#"{"type":"Feature","properties":{"NAME":"X"},
                "geometry":{"type":"Polygon","coordinates":[[[0,0],[0,1],[1,1],[1,0]]]}}"#,
        )
        .unwrap();
        assert_eq!(p.features.len(), 1);
        assert_eq!(p.features[0].attributes["NAME"], "X");
        let Geometry::Polygon(rings) = &p.features[0].geometry else { panic!() };
        assert_eq!(rings[0].len(), 5);
        assert_eq!(rings[0][0], rings[0][4]);
    }

    #[test]
    fn unknown_geometry_skipped() {
        let p = parse_geojson(
            r#"{"type":"FeatureCollection","features":[
                {"type":"Feature","properties":{},"geometry":{"type":"GeometryCollection","geometries":[]}},
                {"type":"Feature","properties":{},"geometry":{"type":"Point","coordinates":[1,2]}}]}"#,
        )
        .unwrap();
        assert_eq!(p.features.len(), 1);
        assert_eq!(p.skipped, 1);
    }

    #[test]
    fn malformed_json() {
        assert!(parse_geojson("{").is_err());
    }
}
