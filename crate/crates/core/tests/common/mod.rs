//! Fixtures, independent oracles and test layers shared by the integration
//! tests.
#![allow(dead_code)]

pub mod scenes;

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use image::{Rgba as Px, RgbaImage};
use serde_json::{json, Value};

use terramap::formats::{Geometry, ParsedFeatures};
use terramap::geometry::Point;
use terramap::layers::{Frame, Layer};
use terramap::projection::ViewState;
use terramap::tiles::{tiles_for_view, TileCache, TileCoord, TileProvider};
use terramap::BoundingBox;

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

/// Sample data shipped at the repository root.
pub fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

// ---------------------------------------------------------------------------
// Tiles

/// A provider whose server does not exist; every tile must come from disk.
pub fn offline_provider() -> TileProvider {
    TileProvider::new("fixture", "http://127.0.0.1:9/{z}/{x}/{y}.png", "fixture tiles").unwrap()
}

/// Deterministic 256x256 tile: a pale checkerboard tinted by the tile
/// address, with a dark border so tile seams are visible.
pub fn synthetic_tile(c: TileCoord) -> RgbaImage {
    let tint = [
        (150 + (c.x * 37 % 80)) as u8,
        (170 + (c.y * 53 % 60)) as u8,
        (190 + (c.z as u32 * 11 % 50)) as u8,
    ];
    RgbaImage::from_fn(256, 256, |x, y| {
        if x == 0 || y == 0 {
            return Px([90, 90, 90, 255]);
        }
        let check = ((x / 32) + (y / 32)) % 2 == 0;
        let k = if check { 0 } else { 20 };
        Px([tint[0] - k, tint[1] - k, tint[2] - k, 255])
    })
}

/// Writes synthetic tiles for everything `view` needs into `root`.
pub fn seed_tiles(root: &Path, provider: &TileProvider, view: &ViewState) {
    let cache = TileCache::new(root);
    for c in tiles_for_view(view) {
        let path = cache.path_for(provider, c);
        if !path.exists() {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            synthetic_tile(c).save(&path).unwrap();
        }
    }
}

// ---------------------------------------------------------------------------
// Formats

fn coords(ring: &[[f64; 2]]) -> Value {
    Value::Array(ring.iter().map(|p| json!([p[0], p[1]])).collect())
}

/// The canonical JSON form used by the `.expected.json` fixtures.
pub fn features_json(parsed: &ParsedFeatures) -> String {
    let features: Vec<Value> = parsed
        .features
        .iter()
        .map(|f| {
            let geometry = match &f.geometry {
                Geometry::Point(p) => json!({"type": "Point", "coordinates": [p[0], p[1]]}),
                Geometry::PolyLine(parts) => json!({
                    "type": "PolyLine",
                    "coordinates": parts.iter().map(|p| coords(p)).collect::<Vec<_>>(),
                }),
                Geometry::Polygon(rings) => json!({
                    "type": "Polygon",
                    "coordinates": rings.iter().map(|r| coords(r)).collect::<Vec<_>>(),
                }),
            };
            json!({"geometry": geometry, "attributes": Value::Object(f.attributes.clone())})
        })
        .collect();
    let mut s = serde_json::to_string(&json!({"features": features, "skipped": parsed.skipped})).unwrap();
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Oracles

/// Web Mercator tile index from the textbook formula, written without any
/// of the library's projection code.
pub fn tile_oracle(lon: f64, lat: f64, z: u32) -> (u32, u32) {
    let n = 2f64.powi(z as i32);
    let x = ((lon + 180.0) / 360.0 * n).floor();
    let lat_r = lat.to_radians();
    let y = ((1.0 - (lat_r.tan() + 1.0 / lat_r.cos()).ln() / std::f64::consts::PI) / 2.0 * n).floor();
    (x as u32, y as u32)
}

/// Bin counts by testing every point against every cell's bounds.
pub fn bin2d_oracle(sx: &[f64], sy: &[f64], cell: f64, x0: f64, y0: f64, w: usize, h: usize) -> Vec<f64> {
    let mut out = vec![0.0; w * h];
    for iy in 0..h {
        for ix in 0..w {
            let (lx, ly) = (x0 + ix as f64 * cell, y0 + iy as f64 * cell);
            out[iy * w + ix] = sx
                .iter()
                .zip(sy)
                .filter(|(&x, &y)| x >= lx && x < lx + cell && y >= ly && y < ly + cell)
                .count() as f64;
        }
    }
    out
}

/// Density at every cell by summing each point's truncated, normalized
/// Gaussian kernel directly in two dimensions.
pub fn kde_oracle(cells: &[(usize, usize)], sigma: (f64, f64), w: usize, h: usize) -> Vec<f64> {
    let weight = |d: i64, s: f64| {
        let r = (3.0 * s).floor() as i64;
        if d.abs() > r {
            return 0.0;
        }
        let norm: f64 = (-r..=r).map(|k| (-(k * k) as f64 / (2.0 * s * s)).exp()).sum();
        (-(d * d) as f64 / (2.0 * s * s)).exp() / norm
    };
    let mut out = vec![0.0; w * h];
    for iy in 0..h {
        for ix in 0..w {
            out[iy * w + ix] = cells
                .iter()
                .map(|&(px, py)| weight(ix as i64 - px as i64, sigma.0) * weight(iy as i64 - py as i64, sigma.1))
                .sum();
        }
    }
    out
}

/// Largest violation of the empty-circumcircle property: for each triangle,
/// how far inside its circumcircle the nearest other point lies, relative
/// to the radius. Non-positive means Delaunay.
pub fn worst_circumcircle_violation(points: &[Point], triangles: &[[usize; 3]]) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for t in triangles {
        let [a, b, c] = t.map(|i| points[i]);
        let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
        let sq = |p: Point| p[0] * p[0] + p[1] * p[1];
        let ux = (sq(a) * (b[1] - c[1]) + sq(b) * (c[1] - a[1]) + sq(c) * (a[1] - b[1])) / d;
        let uy = (sq(a) * (c[0] - b[0]) + sq(b) * (a[0] - c[0]) + sq(c) * (b[0] - a[0])) / d;
        let r = ((a[0] - ux).powi(2) + (a[1] - uy).powi(2)).sqrt();
        for (i, p) in points.iter().enumerate() {
            if t.contains(&i) {
                continue;
            }
            let dist = ((p[0] - ux).powi(2) + (p[1] - uy).powi(2)).sqrt();
            worst = worst.max((r - dist) / r);
        }
    }
    worst
}

/// Index of the seed nearest to `p`, ties to the lowest index, plus the
/// runner-up distance gap.
pub fn nearest_seed(seeds: &[Point], p: Point) -> (usize, f64) {
    let mut d: Vec<(f64, usize)> = seeds
        .iter()
        .enumerate()
        .map(|(i, s)| ((s[0] - p[0]).hypot(s[1] - p[1]), i))
        .collect();
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    (d[0].1, d.get(1).map_or(f64::INFINITY, |x| x.0 - d[0].0))
}

/// Even-odd point-in-polygon test.
pub fn point_in_polygon(ring: &[Point], p: Point) -> bool {
    let mut inside = false;
    let n = ring.len();
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (ring[i], ring[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) && p[0] < (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0] {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Hull vertices by the O(n^3) definition: an ordered pair (i, j) is a hull
/// edge when every other point lies strictly left of it, or on the segment
/// between them. Returns the sorted set of vertex indices.
pub fn hull_oracle(points: &[Point]) -> Vec<usize> {
    let cross = |o: Point, a: Point, b: Point| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut verts = std::collections::BTreeSet::new();
    for i in 0..points.len() {
        for j in 0..points.len() {
            if i == j || points[i] == points[j] {
                continue;
            }
            let (a, b) = (points[i], points[j]);
            let ok = points.iter().all(|&p| {
                let c = cross(a, b, p);
                if c > 0.0 {
                    return true;
                }
                if c < 0.0 {
                    return false;
                }
                // Collinear: must lie within the segment.
                let t = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
                let len2 = (b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2);
                t >= 0.0 && t <= len2
            });
            if ok {
                verts.insert(i);
                verts.insert(j);
            }
        }
    }
    verts.into_iter().collect()
}

/// Hull corner positions from [`hull_oracle`].
pub fn hull_corners(points: &[Point]) -> std::collections::BTreeSet<(i64, i64)> {
    hull_oracle(points).into_iter().map(|i| (points[i][0] as i64, points[i][1] as i64)).collect()
}

/// Number of points on the hull boundary, corners and collinear edge
/// points alike.
pub fn boundary_count(points: &[Point]) -> usize {
    let corners: Vec<Point> = hull_oracle(points).into_iter().map(|i| points[i]).collect();
    points
        .iter()
        .filter(|&&p| {
            corners.iter().any(|&a| {
                corners.iter().any(|&b| {
                    let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                    let t = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
                    let len2 = (b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2);
                    a != b && cross == 0.0 && t >= 0.0 && t <= len2 && on_hull_edge(points, a, b)
                })
            })
        })
        .count()
}

/// Whether a-b is a hull edge: no point strictly right of it.
fn on_hull_edge(points: &[Point], a: Point, b: Point) -> bool {
    let sides: Vec<f64> = points
        .iter()
        .map(|p| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]))
        .collect();
    sides.iter().all(|&c| c >= 0.0) || sides.iter().all(|&c| c <= 0.0)
}

// ---------------------------------------------------------------------------
// Layers

#[derive(Default)]
pub struct Counters {
    pub invalidates: AtomicUsize,
    pub draws: AtomicUsize,
}

impl Counters {
    pub fn invalidates(&self) -> usize {
        self.invalidates.load(Ordering::SeqCst)
    }
    pub fn draws(&self) -> usize {
        self.draws.load(Ordering::SeqCst)
    }
}

/// Counts lifecycle calls and paints a marker so draw order is visible.
pub struct CountingLayer {
    pub counters: Arc<Counters>,
    pub color: terramap::Rgba,
    pub bbox: Option<BoundingBox>,
}

impl CountingLayer {
    pub fn new(color: terramap::Rgba) -> (Self, Arc<Counters>) {
        let counters = Arc::new(Counters::default());
        (
            CountingLayer {
                counters: Arc::clone(&counters),
                color,
                bbox: None,
            },
            counters,
        )
    }
}

impl Layer for CountingLayer {
    fn invalidate(&mut self, _view: &ViewState) {
        self.counters.invalidates.fetch_add(1, Ordering::SeqCst);
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.counters.draws.fetch_add(1, Ordering::SeqCst);
        let mut p = terramap::render::BatchPainter::new();
        p.set_color(self.color);
        p.rect(0.0, 0.0, 10.0, 10.0);
        p.batch_draw(frame.canvas);
    }

    fn bbox(&self) -> Option<BoundingBox> {
        self.bbox
    }
}

/// Per-channel maximum absolute difference.
pub fn max_channel_diff(a: &RgbaImage, b: &RgbaImage) -> u8 {
    assert_eq!(a.dimensions(), b.dimensions(), "image sizes differ");
    a.as_raw()
        .iter()
        .zip(b.as_raw())
        .map(|(x, y)| x.abs_diff(*y))
        .max()
        .unwrap_or(0)
}
