//! Ear-clipping triangulation of simple polygons.

use crate::geometry::predicates::orient2d;
use crate::geometry::{polygon_area, Point};

/// Above this many vertices the quadratic self-intersection check is
/// skipped and only ear-clipping failure flags a non-simple ring.
const SIMPLICITY_CHECK_LIMIT: usize = 4096;

/// Triangles (index triples into `ring`) covering a simple polygon, or
/// `None` when the ring self-intersects. A closing vertex equal to the first
/// is allowed; zero-area rings give no triangles.
pub fn triangulate(ring: &[Point]) -> Option<Vec<[usize; 3]>> {
    let mut idx: Vec<usize> = Vec::with_capacity(ring.len());
    for (i, p) in ring.iter().enumerate() {
        if !(p[0].is_finite() && p[1].is_finite()) {
            return None;
        }
        if idx.last().is_none_or(|&j| ring[j] != *p) {
            idx.push(i);
        }
    }
    while idx.len() > 1 && ring[idx[0]] == ring[*idx.last().unwrap()] {
        idx.pop();
    }
    if idx.len() < 3 {
        return Some(Vec::new());
    }
    let pts: Vec<Point> = idx.iter().map(|&i| ring[i]).collect();
    if pts.len() <= SIMPLICITY_CHECK_LIMIT && self_intersects(&pts) {
        return None;
    }
    let area = polygon_area(&pts);
    if area == 0.0 {
        return Some(Vec::new());
    }
    if area < 0.0 {
        idx.reverse();
    }
    clip_ears(ring, &idx)
}

fn clip_ears(ring: &[Point], idx: &[usize]) -> Option<Vec<[usize; 3]>> {
    let n = idx.len();
    let mut next: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut prev: Vec<usize> = (0..n).map(|i| (i + n - 1) % n).collect();
    let p = |k: usize| ring[idx[k]];
    let mut out = Vec::with_capacity(n - 2);
    let mut remaining = n;
    let mut cur = 0;
    let mut misses = 0;
    while remaining > 3 {
        let (a, b) = (prev[cur], next[cur]);
        let turn = orient2d(p(a), p(cur), p(b));
        let is_ear = turn > 0.0 && {
            let mut k = next[b];
            let mut clear = true;
            while k != a {
                let q = p(k);
                let coincident = q == p(a) || q == p(cur) || q == p(b);
                if !coincident
                    && orient2d(p(a), p(cur), q) >= 0.0
                    && orient2d(p(cur), p(b), q) >= 0.0
                    && orient2d(p(b), p(a), q) >= 0.0
                {
                    clear = false;
                    break;
                }
                k = next[k];
            }
            clear
        };
        if is_ear || turn == 0.0 {
            if is_ear {
                out.push([idx[a], idx[cur], idx[b]]);
            }
            next[a] = b;
            prev[b] = a;
            remaining -= 1;
            cur = b;
            misses = 0;
        } else {
            cur = b;
            misses += 1;
            if misses > remaining {
                return None;
            }
        }
    }
    let (a, b) = (prev[cur], next[cur]);
    if orient2d(p(a), p(cur), p(b)) != 0.0 {
        out.push([idx[a], idx[cur], idx[b]]);
    }
    Some(out)
}

fn self_intersects(pts: &[Point]) -> bool {
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if segments_cross(a, b, c, d) {
                return true;
            }
        }
    }
    false
}

/// Proper or touching intersection of two closed segments.
fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0)) {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        r[0] >= p[0].min(q[0]) && r[0] <= p[0].max(q[0]) && r[1] >= p[1].min(q[1]) && r[1] <= p[1].max(q[1])
    };
    (o1 == 0.0 && on(a, b, c))
        || (o2 == 0.0 && on(a, b, d))
        || (o3 == 0.0 && on(c, d, a))
        || (o4 == 0.0 && on(c, d, b))
}
