//! Web Mercator projection between geographic coordinates, world pixels and
//! the screen.
//!
//! World pixel space at zoom `z` is the square `[0, 256 * 2^z]`, with the
//! origin at the north-west corner (lon -180, lat +85.05...). A
//! [`ViewState`] places the screen's top-left corner somewhere in that space.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Latitude cutoff of the square Mercator world.
pub const MAX_LAT: f64 = 85.05112878;
pub const TILE_SIZE: f64 = 256.0;
pub const MIN_ZOOM: u8 = 2;
pub const MAX_ZOOM: u8 = 20;

/// Side length of the world in pixels at `zoom`.
pub fn world_size(zoom: u8) -> f64 {
    TILE_SIZE * (1u64 << zoom) as f64
}

pub fn lonlat_to_world(lon: f64, lat: f64, zoom: u8) -> (f64, f64) {
    let size = world_size(zoom);
    let phi = lat.clamp(-MAX_LAT, MAX_LAT).to_radians();
    let wx = size * (lon + 180.0) / 360.0;
    let merc = (phi.tan() + 1.0 / phi.cos()).ln();
    let wy = size * (1.0 - merc / PI) / 2.0;
    (wx, wy.clamp(0.0, size))
}

pub fn world_to_lonlat(wx: f64, wy: f64, zoom: u8) -> (f64, f64) {
    let size = world_size(zoom);
    let lon = wx / size * 360.0 - 180.0;
    let merc = PI * (1.0 - 2.0 * wy / size);
    let lat = merc.sinh().atan().to_degrees();
    (lon, lat)
}

/// Geographic extent in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub north: f64,
    pub south: f64,
    pub east: f64,
    pub west: f64,
}

impl BoundingBox {
    /// Latitudes are clamped to the Mercator range.
    pub fn new(north: f64, west: f64, south: f64, east: f64) -> Result<Self> {
        if ![north, west, south, east].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument("bounding box must be finite".into()));
        }
        let north = north.clamp(-MAX_LAT, MAX_LAT);
        let south = south.clamp(-MAX_LAT, MAX_LAT);
        if north <= south {
            return Err(Error::InvalidArgument(format!(
                "bounding box north {north} must be greater than south {south}"
            )));
        }
        if east == west {
            return Err(Error::InvalidArgument(
                "bounding box east and west must differ".into(),
            ));
        }
        // Boxes crossing the antimeridian are not supported; order the
        // longitudes instead.
        Ok(BoundingBox {
            north,
            south,
            east: east.max(west),
            west: east.min(west),
        })
    }

    /// The whole Mercator world.
    pub fn world() -> Self {
        BoundingBox {
            north: MAX_LAT,
            south: -MAX_LAT,
            east: 180.0,
            west: -180.0,
        }
    }

    /// Tightest box around the finite points, padded by 2% of the span on
    /// every side. A zero span in either axis is widened to 0.01 degrees.
    pub fn from_points(lons: &[f64], lats: &[f64]) -> Result<Self> {
        if lons.len() != lats.len() {
            return Err(Error::LengthMismatch {
                expected: lons.len(),
                found: lats.len(),
                what: "latitudes".into(),
            });
        }
        let mut min_lon = f64::INFINITY;
        let mut max_lon = f64::NEG_INFINITY;
        let mut min_lat = f64::INFINITY;
        let mut max_lat = f64::NEG_INFINITY;
        for (&lon, &lat) in lons.iter().zip(lats) {
            if !(lon.is_finite() && lat.is_finite()) {
                continue;
            }
            min_lon = min_lon.min(lon);
            max_lon = max_lon.max(lon);
            min_lat = min_lat.min(lat);
            max_lat = max_lat.max(lat);
        }
        if !min_lon.is_finite() {
            return Err(Error::Degenerate("no finite points".into()));
        }
        let (west, east) = pad(min_lon, max_lon);
        let (south, north) = pad(min_lat, max_lat);
        BoundingBox::new(north, west, south, east)
    }

    /// Smallest box containing both.
    pub fn union(&self, other: &BoundingBox) -> BoundingBox {
        BoundingBox {
            north: self.north.max(other.north),
            south: self.south.min(other.south),
            east: self.east.max(other.east),
            west: self.west.min(other.west),
        }
    }

    /// `(wx_min, wy_min, wx_max, wy_max)` at `zoom`.
    pub fn world_rect(&self, zoom: u8) -> (f64, f64, f64, f64) {
        let (x0, y0) = lonlat_to_world(self.west, self.north, zoom);
        let (x1, y1) = lonlat_to_world(self.east, self.south, zoom);
        (x0, y0, x1, y1)
    }

    fn fits(&self, zoom: u8, screen_w: u32, screen_h: u32) -> bool {
        let (x0, y0, x1, y1) = self.world_rect(zoom);
        x1 - x0 <= screen_w as f64 && y1 - y0 <= screen_h as f64
    }
}

fn pad(lo: f64, hi: f64) -> (f64, f64) {
    let span = hi - lo;
    if span == 0.0 {
        (lo - 0.005, hi + 0.005)
    } else {
        (lo - 0.02 * span, hi + 0.02 * span)
    }
}

/// A screen-sized window into world pixel space at an integer zoom.
///
/// Layers receive the current view in `invalidate` and use it as their
/// projection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViewState {
    pub zoom: u8,
    pub origin_wx: f64,
    pub origin_wy: f64,
    pub screen_w: u32,
    pub screen_h: u32,
}

impl ViewState {
    /// A view of the world at `zoom` whose top-left corner is at the given
    /// world pixel, clamped to the valid range.
    pub fn new(zoom: u8, origin_wx: f64, origin_wy: f64, screen_w: u32, screen_h: u32) -> Self {
        ViewState {
            zoom: zoom.clamp(MIN_ZOOM, MAX_ZOOM),
            origin_wx,
            origin_wy,
            screen_w: screen_w.max(1),
            screen_h: screen_h.max(1),
        }
        .clamped()
    }

    /// A view at `zoom` centered on `(lon, lat)`.
    pub fn centered(lon: f64, lat: f64, zoom: u8, screen_w: u32, screen_h: u32) -> Self {
        let zoom = zoom.clamp(MIN_ZOOM, MAX_ZOOM);
        let (cx, cy) = lonlat_to_world(lon, lat, zoom);
        ViewState::new(
            zoom,
            cx - screen_w as f64 / 2.0,
            cy - screen_h as f64 / 2.0,
            screen_w,
            screen_h,
        )
    }

    /// Keeps at least one pixel of the world inside the viewport.
    fn clamped(mut self) -> Self {
        let size = world_size(self.zoom);
        self.origin_wx = self
            .origin_wx
            .clamp(1.0 - self.screen_w as f64, size - 1.0);
        self.origin_wy = self
            .origin_wy
            .clamp(1.0 - self.screen_h as f64, size - 1.0);
        self
    }

    pub fn lonlat_to_screen(&self, lon: f64, lat: f64) -> (f64, f64) {
        if !(lon.is_finite() && lat.is_finite()) {
            return (f64::NAN, f64::NAN);
        }
        let (wx, wy) = lonlat_to_world(lon, lat, self.zoom);
        (wx - self.origin_wx, wy - self.origin_wy)
    }

    /// Vectorized [`ViewState::lonlat_to_screen`]; NaN inputs give NaN.
    pub fn lonlat_to_screen_batch(&self, lons: &[f64], lats: &[f64]) -> (Vec<f64>, Vec<f64>) {
        assert_eq!(lons.len(), lats.len(), "coordinate arrays differ in length");
        let mut sx = Vec::with_capacity(lons.len());
        let mut sy = Vec::with_capacity(lons.len());
        for (&lon, &lat) in lons.iter().zip(lats) {
            let (x, y) = self.lonlat_to_screen(lon, lat);
            sx.push(x);
            sy.push(y);
        }
        (sx, sy)
    }

    pub fn screen_to_lonlat(&self, sx: f64, sy: f64) -> (f64, f64) {
        world_to_lonlat(sx + self.origin_wx, sy + self.origin_wy, self.zoom)
    }

    /// Geographic coordinates of the screen center.
    pub fn center_lonlat(&self) -> (f64, f64) {
        self.screen_to_lonlat(self.screen_w as f64 / 2.0, self.screen_h as f64 / 2.0)
    }

    /// Zooms by `levels`, keeping the world point under the screen center
    /// fixed. The zoom is clamped to `[MIN_ZOOM, MAX_ZOOM]`.
    pub fn zoom_by(&self, levels: i32) -> ViewState {
        let target = (self.zoom as i32 + levels).clamp(MIN_ZOOM as i32, MAX_ZOOM as i32) as u8;
        if target == self.zoom {
            return *self;
        }
        let half_w = self.screen_w as f64 / 2.0;
        let half_h = self.screen_h as f64 / 2.0;
        let scale = 2f64.powi(target as i32 - self.zoom as i32);
        let cx = (self.origin_wx + half_w) * scale;
        let cy = (self.origin_wy + half_h) * scale;
        ViewState::new(target, cx - half_w, cy - half_h, self.screen_w, self.screen_h)
    }

    /// Moves the map content by `(dx, dy)` screen pixels.
    pub fn pan(&self, dx: f64, dy: f64) -> ViewState {
        ViewState::new(
            self.zoom,
            self.origin_wx - dx,
            self.origin_wy - dy,
            self.screen_w,
            self.screen_h,
        )
    }

    /// The geographic extent visible on screen.
    pub fn bbox(&self) -> BoundingBox {
        let (west, north) = self.screen_to_lonlat(0.0, 0.0);
        let (east, south) = self.screen_to_lonlat(self.screen_w as f64, self.screen_h as f64);
        BoundingBox {
            north,
            south,
            east,
            west,
        }
    }
}

/// The highest zoom at which `bbox` fits on a `screen_w` x `screen_h`
/// screen, centered. Falls back to `MIN_ZOOM` when nothing fits.
pub fn fit_view(bbox: &BoundingBox, screen_w: u32, screen_h: u32) -> ViewState {
    let zoom = (MIN_ZOOM..=MAX_ZOOM)
        .rev()
        .find(|&z| bbox.fits(z, screen_w, screen_h))
        .unwrap_or(MIN_ZOOM);
    let (x0, y0, x1, y1) = bbox.world_rect(zoom);
    ViewState::new(
        zoom,
        (x0 + x1) / 2.0 - screen_w as f64 / 2.0,
        (y0 + y1) / 2.0 - screen_h as f64 / 2.0,
        screen_w,
        screen_h,
    )
}

/// Whether the projected box fits the screen at `zoom`.
pub fn bbox_fits(bbox: &BoundingBox, zoom: u8, screen_w: u32, screen_h: u32) -> bool {
    bbox.fits(zoom, screen_w, screen_h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_maps_to_world_center() {
        for z in 0..=20 {
            let (wx, wy) = lonlat_to_world(0.0, 0.0, z);
            assert_eq!(wx, 128.0 * (1u64 << z) as f64);
            assert!((wy - 128.0 * (1u64 << z) as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn top_edge() {
        let (_, wy) = lonlat_to_world(0.0, MAX_LAT, 10);
        assert_eq!(wy, 0.0);
        let (lon, lat) = world_to_lonlat(world_size(3) / 2.0, 0.0, 3);
        assert_eq!(lon, 0.0);
        assert!((lat - 85.051128779806).abs() < 1e-9);
    }

    #[test]
    fn inverse_of_center() {
        let s = world_size(7) / 2.0;
        let (lon, lat) = world_to_lonlat(s, s, 7);
        assert!(lon.abs() < 1e-12 && lat.abs() < 1e-12);
    }

    #[test]
    fn screen_translation() {
        let v = ViewState::new(5, 1000.0, 2000.0, 800, 600);
        let (lon, lat) = v.screen_to_lonlat(0.0, 0.0);
        let (sx, sy) = v.lonlat_to_screen(lon, lat);
        assert!(sx.abs() < 1e-9 && sy.abs() < 1e-9);
        let w = ViewState { origin_wx: v.origin_wx + 10.0, ..v };
        let (sx2, _) = w.lonlat_to_screen(12.0, 55.0);
        let (sx1, _) = v.lonlat_to_screen(12.0, 55.0);
        assert!((sx1 - sx2 - 10.0).abs() < 1e-9);
        let (nx, ny) = v.lonlat_to_screen(f64::NAN, 1.0);
        assert!(nx.is_nan() && ny.is_nan());
    }

    #[test]
    fn from_points_degenerate_and_padded() {
        let b = BoundingBox::from_points(&[12.0], &[55.0]).unwrap();
        assert!((b.east - b.west - 0.01).abs() < 1e-12);
        assert!((b.north - b.south - 0.01).abs() < 1e-12);
        assert!(((b.east + b.west) / 2.0 - 12.0).abs() < 1e-12);
        let b = BoundingBox::from_points(&[-170.0, 170.0], &[-60.0, 60.0]).unwrap();
        assert!((b.west - (-170.0 - 6.8)).abs() < 1e-9);
        assert!((b.east - (170.0 + 6.8)).abs() < 1e-9);
        assert!((b.north - 62.4).abs() < 1e-9);
        assert!(BoundingBox::from_points(&[f64::NAN], &[1.0]).is_err());
    }

    #[test]
    fn bbox_validation() {
        assert!(BoundingBox::new(10.0, 0.0, 20.0, 5.0).is_err());
        assert!(BoundingBox::new(20.0, 5.0, 10.0, 5.0).is_err());
        let b = BoundingBox::new(89.0, -10.0, -89.0, 10.0).unwrap();
        assert_eq!(b.north, MAX_LAT);
    }

    #[test]
    fn whole_world_clamps_to_min_zoom() {
        let v = fit_view(&BoundingBox::world(), 256, 256);
        assert_eq!(v.zoom, MIN_ZOOM);
    }

    #[test]
    fn zoom_in_out_restores() {
        let v = ViewState::centered(12.5, 55.7, 9, 1280, 768);
        assert_eq!(v.zoom_by(1).zoom_by(-1), v);
        let top = ViewState::centered(12.5, 55.7, 20, 1280, 768);
        assert_eq!(top.zoom_by(1), top);
    }

    #[test]
    fn pan_clamps_at_world_edge() {
        let v = ViewState::new(2, 0.0, 0.0, 100, 100);
        let p = v.pan(1e6, 0.0);
        assert_eq!(p.origin_wx, -99.0);
        assert_eq!(v.pan(10.0, 0.0).pan(-10.0, 0.0), v);
    }
}
