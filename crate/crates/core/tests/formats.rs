mod common;

use std::collections::HashMap;

use serde_json::{Map, Value};

use terramap::colormap::{ColorMap, Scale};
use terramap::formats::{parse_geojson, read_geojson, read_shapefile, state_county_key, to_geojson};
use terramap::layers::{FeatureColor, GeoJsonLayer, GeoJsonOptions};
use terramap::{BoundingBox, Engine, Error};

fn expected(rel: &str) -> String {
    std::fs::read_to_string(common::fixture(rel)).unwrap()
}

#[test]
fn shapefiles_match_expected_features() {
    for name in ["points", "polygons", "lines"] {
        let parsed = read_shapefile(common::fixture(&format!("shp/{name}"))).unwrap();
        assert_eq!(common::features_json(&parsed), expected(&format!("shp/{name}.expected.json")), "{name}");
    }
}

#[test]
fn shapefile_path_may_carry_the_suffix() {
    let a = read_shapefile(common::fixture("shp/lines")).unwrap();
    let b = read_shapefile(common::fixture("shp/lines.shp")).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.skipped, 1);
}

#[test]
fn missing_shapefile_is_io_error() {
    let err = read_shapefile(common::fixture("shp/absent")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }), "{err:?}");
}

#[test]
fn geojson_matches_expected_features() {
    let parsed = read_geojson(common::fixture("geojson/mixed.geojson")).unwrap();
    assert_eq!(common::features_json(&parsed), expected("geojson/mixed.expected.json"));
}

#[test]
fn geojson_round_trips_through_writer() {
    for rel in ["geojson/mixed.geojson", "geojson/counties.geojson"] {
        let parsed = read_geojson(common::fixture(rel)).unwrap();
        let text = serde_json::to_string(&to_geojson(&parsed.features)).unwrap();
        let again = parse_geojson(&text).unwrap();
        assert_eq!(again.features, parsed.features, "{rel}");
        assert_eq!(again.skipped, 0);
    }
}

#[test]
fn malformed_geojson_is_rejected() {
    for text in ["", "{", "[1,2]", r#"{"type":"FeatureCollection"}"#] {
        assert!(parse_geojson(text).is_err(), "{text:?}");
    }
}

fn unemployment() -> HashMap<String, f64> {
    let text = std::fs::read_to_string(common::fixture("geojson/unemployment.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// County choropleth: rates colored on a 10-level Blues map, counties
/// without a rate drawn fully transparent.
fn choropleth() -> FeatureColor {
    let rates = unemployment();
    let cmap = ColorMap::new("Blues").unwrap().with_levels(10).unwrap();
    FeatureColor::ByAttributes(Box::new(move |attrs: &Map<String, Value>| {
        match state_county_key(attrs).and_then(|k| rates.get(&k)) {
            Some(&rate) => cmap.to_color(rate, 10.0, Scale::Lin).unwrap(),
            None => [0, 0, 0, 0],
        }
    }))
}

#[test]
fn choropleth_join_leaves_unmapped_transparent() {
    let layer = GeoJsonLayer::new(
        common::fixture("geojson/counties.geojson"),
        GeoJsonOptions { fill: true, color: choropleth(), ..GeoJsonOptions::default() },
    )
    .unwrap();
    let names: Vec<String> = layer.features().iter().map(|f| f.attr_text("NAME").unwrap()).collect();
    let colors = layer.feature_colors();
    assert_eq!(colors.len(), 6);
    for (name, c) in names.iter().zip(colors) {
        if name == "Unmapped" {
            assert_eq!(c[3], 0, "{name}");
        } else {
            assert_eq!(c[3], 255, "{name}");
        }
    }
    // 8.6 is the highest rate and lands on a darker level than 4.9.
    let by_name = |n: &str| colors[names.iter().position(|x| x == n).unwrap()];
    let lum = |c: [u8; 4]| c[0] as u32 + c[1] as u32 + c[2] as u32;
    assert!(lum(by_name("Barbour")) < lum(by_name("Baldwin")));
}

#[test]
fn choropleth_renders_with_transparent_fallback() {
    let mut engine = Engine::new();
    engine.tile_provider(None);
    engine.set_size(400, 300);
    engine.set_bbox(BoundingBox::new(33.5, -88.5, 30.5, -84.5).unwrap());
    engine
        .geojson(
            common::fixture("geojson/counties.geojson"),
            GeoJsonOptions { fill: true, color: choropleth(), ..GeoJsonOptions::default() },
        )
        .unwrap();
    let view = engine.resolve_view();
    let img = engine.render().unwrap();
    let px = |lon: f64, lat: f64| {
        let (x, y) = view.lonlat_to_screen(lon, lat);
        img.get_pixel(x as u32, y as u32).0
    };
    assert_eq!(px(-85.5, 32.5), [255, 255, 255, 255], "unmapped county shows the background");
    assert_ne!(px(-86.5, 31.5), [255, 255, 255, 255], "mapped county is filled");
    assert_ne!(px(-87.5, 32.5), [255, 255, 255, 255]);
}
