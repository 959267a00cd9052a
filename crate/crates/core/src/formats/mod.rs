//! Vector data readers: ESRI shapefiles (with dBase attributes) and GeoJSON.
//!
//! Coordinates are WGS84 `[lon, lat]`; projection files are not read.

mod dbf;
mod geojson;
mod shapefile;

use serde_json::{Map, Value};

pub use dbf::{read_dbf, DbfField, DbfTable};
pub use geojson::{parse_geojson, read_geojson, to_geojson};
pub use shapefile::read_shapefile;

/// `[lon, lat]` in degrees.
pub type LonLat = [f64; 2];

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Point(LonLat),
    /// One vertex list per part.
    PolyLine(Vec<Vec<LonLat>>),
    /// Closed rings. Outer rings are counterclockwise (lat up) and each is
    /// followed by its holes, which are clockwise.
    Polygon(Vec<Vec<LonLat>>),
}

impl Geometry {
    pub fn vertices(&self) -> Box<dyn Iterator<Item = LonLat> + '_> {
        match self {
            Geometry::Point(p) => Box::new(std::iter::once(*p)),
            Geometry::PolyLine(parts) | Geometry::Polygon(parts) => {
                Box::new(parts.iter().flatten().copied())
            }
        }
    }

    fn is_finite(&self) -> bool {
        self.vertices().all(|p| p[0].is_finite() && p[1].is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorFeature {
    pub geometry: Geometry,
    pub attributes: Map<String, Value>,
}

impl VectorFeature {
    pub fn new(geometry: Geometry, attributes: Map<String, Value>) -> Self {
        VectorFeature {
            geometry,
            attributes,
        }
    }

    /// Attribute as display text: strings verbatim, other values as JSON.
    pub fn attr_text(&self, key: &str) -> Option<String> {
        self.attributes.get(key).map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    }
}

/// Features read from a file, plus how many records were skipped because
/// their geometry type is not supported.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedFeatures {
    pub features: Vec<VectorFeature>,
    pub skipped: usize,
}

/// Closes every ring and orients it: `outer` rings counterclockwise, holes
/// clockwise. Zero-area rings keep their order.
fn normalize_ring(mut ring: Vec<LonLat>, outer: bool) -> Vec<LonLat> {
    if let (Some(&first), Some(&last)) = (ring.first(), ring.last()) {
        if first != last {
            ring.push(first);
        }
    }
    let area = crate::geometry::polygon_area(&ring);
    if (outer && area < 0.0) || (!outer && area > 0.0) {
        ring.reverse();
    }
    ring
}

/// Joins a county-level record to a value table keyed like
/// `"{int(STATE)}{COUNTY}"`, e.g. STATE `"01"` and COUNTY `"001"` give
/// `"1001"`. Returns `None` when either property is missing or STATE is not
/// an integer.
pub fn state_county_key(attributes: &Map<String, Value>) -> Option<String> {
    let state: i64 = match attributes.get("STATE")? {
        Value::String(s) => s.trim().parse().ok()?,
        Value::Number(n) => n.as_i64().or_else(|| n.as_f64().map(|f| f as i64))?,
        _ => return None,
    };
    let county = match attributes.get("COUNTY")? {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return None,
    };
    Some(format!("{state}{county}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rings_closed_and_oriented() {
        let cw = vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        let r = normalize_ring(cw.clone(), true);
        assert_eq!(r.len(), 5);
        assert_eq!(r.first(), r.last());
        assert!(crate::geometry::polygon_area(&r) > 0.0);
        let h = normalize_ring(cw, false);
        assert!(crate::geometry::polygon_area(&h) < 0.0);
    }

    #[test]
    fn county_key() {
        let a = json!({"STATE": "01", "COUNTY": "001"});
        assert_eq!(state_county_key(a.as_object().unwrap()).unwrap(), "1001");
        let b = json!({"STATE": 6, "COUNTY": "037"});
        assert_eq!(state_county_key(b.as_object().unwrap()).unwrap(), "6037");
        let c = json!({"STATE": "xx", "COUNTY": "037"});
        assert_eq!(state_county_key(c.as_object().unwrap()), None);
    }
}
