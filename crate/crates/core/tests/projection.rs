mod common;

use proptest::prelude::*;
use terramap::projection::{
    bbox_fits, fit_view, lonlat_to_world, world_size, world_to_lonlat, BoundingBox, ViewState, MAX_LAT,
    MAX_ZOOM, MIN_ZOOM,
};
use terramap::tiles::{tiles_for_view, TileCoord};

#[test]
fn tile_index_matches_independent_formula() {
    let (wx, wy) = lonlat_to_world(12.568, 55.676, 10);
    let t = TileCoord::containing(10, wx, wy);
    assert_eq!((t.x, t.y), (547, 320));
    assert_eq!(common::tile_oracle(12.568, 55.676, 10), (547, 320));
}

#[test]
fn world_corners() {
    for z in MIN_ZOOM..=MAX_ZOOM {
        let size = world_size(z);
        let (x0, y0) = lonlat_to_world(-180.0, MAX_LAT, z);
        let (x1, y1) = lonlat_to_world(180.0, -MAX_LAT, z);
        assert!(x0.abs() < 1e-6 && y0.abs() < 1e-3 * size / 256.0, "z={z}: ({x0}, {y0})");
        assert!((x1 - size).abs() < 1e-6 && (y1 - size).abs() < 1e-3 * size / 256.0);
    }
}

#[test]
fn fit_view_picks_the_largest_zoom_that_fits() {
    let bbox = BoundingBox::new(57.8, 8.0, 54.5, 12.7).unwrap();
    let v = fit_view(&bbox, 1280, 768);
    assert!(bbox_fits(&bbox, v.zoom, 1280, 768));
    assert!(v.zoom == MAX_ZOOM || !bbox_fits(&bbox, v.zoom + 1, 1280, 768));
    // The box is centered.
    let (left, top) = v.lonlat_to_screen(8.0, 57.8);
    let (right, bottom) = v.lonlat_to_screen(12.7, 54.5);
    assert!(((left + right) / 2.0 - 640.0).abs() < 1e-6, "{left} {right}");
    assert!(((top + bottom) / 2.0 - 384.0).abs() < 1e-6, "{top} {bottom}");
}

#[test]
fn tiles_cover_viewport_plus_margin() {
    let v = ViewState::centered(12.5, 55.7, 10, 1280, 768);
    let tiles = tiles_for_view(&v);
    // Every screen pixel corner falls in some listed tile.
    for (sx, sy) in [(0.0, 0.0), (1279.9, 0.0), (0.0, 767.9), (1279.9, 767.9), (640.0, 384.0)] {
        let t = TileCoord::containing(10, v.origin_wx + sx, v.origin_wy + sy);
        assert!(tiles.contains(&t), "{t:?} missing");
    }
    let xs: Vec<u32> = tiles.iter().map(|t| t.x).collect();
    let ys: Vec<u32> = tiles.iter().map(|t| t.y).collect();
    let cols = xs.iter().max().unwrap() - xs.iter().min().unwrap() + 1;
    let rows = ys.iter().max().unwrap() - ys.iter().min().unwrap() + 1;
    assert_eq!(tiles.len() as u32, cols * rows);
    // 1280 px spans at most 6 tile columns; plus one on each side.
    assert!(cols <= 8 && rows <= 6, "{cols}x{rows}");
}

#[test]
fn tiles_clipped_to_grid() {
    let v = ViewState::centered(0.0, 0.0, 2, 2000, 2000);
    let tiles = tiles_for_view(&v);
    assert_eq!(tiles.len(), 16);
    assert!(tiles.iter().all(|t| t.x < 4 && t.y < 4));
}

proptest! {
    #[test]
    fn lonlat_world_round_trip(lon in -180.0f64..180.0, lat in -85.0f64..85.0, z in MIN_ZOOM..=MAX_ZOOM) {
        let (wx, wy) = lonlat_to_world(lon, lat, z);
        let (lon2, lat2) = world_to_lonlat(wx, wy, z);
        prop_assert!((lon - lon2).abs() < 1e-9);
        prop_assert!((lat - lat2).abs() < 1e-9);
    }

    #[test]
    fn tile_index_agrees_with_oracle(lon in -179.9f64..179.9, lat in -85.0f64..85.0, z in MIN_ZOOM..=18u8) {
        let (wx, wy) = lonlat_to_world(lon, lat, z);
        let t = TileCoord::containing(z, wx, wy);
        let (ox, oy) = common::tile_oracle(lon, lat, z as u32);
        // The two formulas may round differently within 1e-9 of a tile edge.
        prop_assert!(t.x.abs_diff(ox) <= 1 && t.y.abs_diff(oy) <= 1);
        let fx = wx / 256.0 - wx.div_euclid(256.0);
        let fy = wy / 256.0 - wy.div_euclid(256.0);
        if fx > 1e-6 && fx < 1.0 - 1e-6 && fy > 1e-6 && fy < 1.0 - 1e-6 {
            prop_assert_eq!((t.x, t.y), (ox, oy));
        }
    }

    #[test]
    fn zoom_in_out_is_identity(lon in -170.0f64..170.0, lat in -80.0f64..80.0, z in 3u8..19) {
        let v = ViewState::centered(lon, lat, z, 800, 600);
        prop_assert_eq!(v.zoom_by(1).zoom_by(-1), v);
    }

    #[test]
    fn pan_moves_screen_points(dx in -500.0f64..500.0, dy in -500.0f64..500.0) {
        let v = ViewState::centered(12.5, 55.7, 10, 800, 600);
        let (x0, y0) = v.lonlat_to_screen(12.6, 55.6);
        let (x1, y1) = v.pan(dx, dy).lonlat_to_screen(12.6, 55.6);
        prop_assert!((x1 - x0 - dx).abs() < 1e-6 && (y1 - y0 - dy).abs() < 1e-6);
    }
}
