//! Voronoi cells as the dual of the Delaunay triangulation.
//!
//! A seed's cell is the clip rectangle cut by the bisector half-plane of each
//! Delaunay neighbor. Only Delaunay neighbors contribute edges to a Voronoi
//! cell, so this is exact and every cell is convex.

use super::delaunay::{delaunay, Triangulation, TriangulationStatus};
use super::{dedup_points, Point, Rect};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct VoronoiDiagram {
    pub seeds: Vec<Point>,
    /// One convex counterclockwise (y up) polygon per seed, not repeating
    /// the first vertex. Duplicate and non-finite seeds get an empty cell;
    /// the first of several equal seeds owns the region.
    pub cells: Vec<Vec<Point>>,
    pub clip: Rect,
}

/// Voronoi diagram of `seeds` clipped to `clip`.
pub fn voronoi(seeds: &[Point], clip: Rect) -> Result<VoronoiDiagram> {
    if seeds.is_empty() {
        return Err(Error::Degenerate("voronoi needs at least one seed".into()));
    }
    let (distinct, _) = dedup_points(seeds);
    if distinct.len() >= 3 {
        let tri = delaunay(seeds)?;
        return voronoi_from_triangulation(&tri, clip);
    }
    let neighbors = line_neighbors(seeds, &distinct);
    Ok(build(seeds, &distinct, &neighbors, clip))
}

/// Voronoi diagram for the points of an existing triangulation.
pub fn voronoi_from_triangulation(tri: &Triangulation, clip: Rect) -> Result<VoronoiDiagram> {
    let (distinct, _) = dedup_points(&tri.points);
    if distinct.is_empty() {
        return Err(Error::Degenerate("voronoi needs at least one finite seed".into()));
    }
    let neighbors = match tri.status {
        TriangulationStatus::Collinear => line_neighbors(&tri.points, &distinct),
        TriangulationStatus::Complete => {
            let mut adj = vec![Vec::new(); tri.points.len()];
            for (a, b) in tri.edges() {
                adj[a].push(b);
                adj[b].push(a);
            }
            adj
        }
    };
    Ok(build(&tri.points, &distinct, &neighbors, clip))
}

/// For collinear seeds the neighbors are the adjacent seeds along the line.
fn line_neighbors(points: &[Point], distinct: &[usize]) -> Vec<Vec<usize>> {
    let mut order = distinct.to_vec();
    order.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp(&points[j][0])
            .then(points[i][1].total_cmp(&points[j][1]))
    });
    let mut adj = vec![Vec::new(); points.len()];
    for w in order.windows(2) {
        adj[w[0]].push(w[1]);
        adj[w[1]].push(w[0]);
    }
    adj
}

fn build(points: &[Point], distinct: &[usize], neighbors: &[Vec<usize>], clip: Rect) -> VoronoiDiagram {
    let mut cells = vec![Vec::new(); points.len()];
    let mut scratch = Vec::new();
    for &i in distinct {
        let mut cell = clip.corners().to_vec();
        for &j in &neighbors[i] {
            clip_bisector(&cell, points[i], points[j], &mut scratch);
            std::mem::swap(&mut cell, &mut scratch);
            if cell.is_empty() {
                break;
            }
        }
        cells[i] = cell;
    }
    VoronoiDiagram {
        seeds: points.to_vec(),
        cells,
        clip,
    }
}

/// Keeps the part of `poly` closer to `pi` than to `pj` (Sutherland-Hodgman
/// against one half-plane).
fn clip_bisector(poly: &[Point], pi: Point, pj: Point, out: &mut Vec<Point>) {
    out.clear();
    let n = [pj[0] - pi[0], pj[1] - pi[1]];
    let m = [(pi[0] + pj[0]) / 2.0, (pi[1] + pj[1]) / 2.0];
    let side = |p: Point| (p[0] - m[0]) * n[0] + (p[1] - m[1]) * n[1];
    let len = poly.len();
    for k in 0..len {
        let a = poly[k];
        let b = poly[(k + 1) % len];
        let (sa, sb) = (side(a), side(b));
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            let t = sa / (sa - sb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
}
