//! Computational kernels behind the density and structure layers.
//!
//! Everything here works in screen pixels and returns raw values; color
//! scaling is the layers' business.

mod delaunay;
mod grid;
mod hull;
mod kde;
pub mod predicates;
mod voronoi;

pub use delaunay::{delaunay, Triangulation, TriangulationStatus};
pub use grid::{bin2d, Grid2D};
pub use hull::{convex_hull, convex_hull_points};
pub use kde::{gaussian_weights, kde_grid, KdeParams};
pub use voronoi::{voronoi, voronoi_from_triangulation, VoronoiDiagram};

/// A point in screen pixels.
pub type Point = [f64; 2];

/// Axis-aligned rectangle `[x, x + w) x [y, y + h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        Rect { x, y, w, h }
    }

    /// The rectangle `[0, w) x [0, h)`.
    pub fn screen(w: u32, h: u32) -> Self {
        Rect::new(0.0, 0.0, w as f64, h as f64)
    }

    pub fn contains(&self, p: Point) -> bool {
        p[0] >= self.x && p[0] < self.x + self.w && p[1] >= self.y && p[1] < self.y + self.h
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    pub fn corners(&self) -> [Point; 4] {
        let (x0, y0, x1, y1) = (self.x, self.y, self.x + self.w, self.y + self.h);
        [[x0, y0], [x1, y0], [x1, y1], [x0, y1]]
    }
}

/// Signed area; positive for counterclockwise rings (y up).
pub fn polygon_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    if n < 3 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        sum += a[0] * b[1] - b[0] * a[1];
    }
    sum / 2.0
}

/// Center of the circle through `a`, `b` and `c`.
pub fn circumcenter(a: Point, b: Point, c: Point) -> Point {
    let bx = b[0] - a[0];
    let by = b[1] - a[1];
    let cx = c[0] - a[0];
    let cy = c[1] - a[1];
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    [
        a[0] + (cy * b2 - by * c2) / d,
        a[1] + (bx * c2 - cx * b2) / d,
    ]
}

/// Distinct finite points in first-occurrence order, plus for every input
/// the index of its representative in the distinct list (or `None` when not
/// finite).
pub(crate) fn dedup_points(points: &[Point]) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut order: Vec<usize> = (0..points.len())
        .filter(|&i| points[i][0].is_finite() && points[i][1].is_finite())
        .collect();
    order.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp(&points[j][0])
            .then(points[i][1].total_cmp(&points[j][1]))
            .then(i.cmp(&j))
    });
    let mut first_of = vec![None; points.len()];
    let mut k = 0;
    while k < order.len() {
        let head = order[k];
        let mut m = k;
        while m < order.len() && points[order[m]] == points[head] {
            first_of[order[m]] = Some(head);
            m += 1;
        }
        k = m;
    }
    let mut distinct = Vec::new();
    let mut rep = vec![None; points.len()];
    let mut slot = vec![usize::MAX; points.len()];
    for i in 0..points.len() {
        if let Some(head) = first_of[i] {
            if head == i {
                slot[i] = distinct.len();
                distinct.push(i);
            }
            rep[i] = Some(slot[head]);
        }
    }
    (distinct, rep)
}
