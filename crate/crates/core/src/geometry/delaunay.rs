//! Incremental Bowyer-Watson Delaunay triangulation.
//!
//! The mesh is closed with a symbolic vertex at infinity: every convex-hull
//! edge carries a "ghost" triangle joining it to that vertex. A point outside
//! the hull conflicts with the ghosts whose hull edge it can see, so the hull
//! is maintained exactly and no finite super-triangle is needed.
//!
//! Points are inserted in Hilbert-curve order and located by a visibility
//! walk from the previously created triangle.

use super::predicates::{incircle, orient2d};
use super::{dedup_points, Point};
use crate::{Error, Result};

/// Triangles over the input points. Indices refer to the original input;
/// exact duplicates are represented by their first occurrence.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub points: Vec<Point>,
    /// Counterclockwise (y up) index triples.
    pub triangles: Vec<[usize; 3]>,
    pub status: TriangulationStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangulationStatus {
    Complete,
    /// All points lie on one line; there are no triangles.
    Collinear,
}

impl Triangulation {
    /// Unique undirected edges as `(min, max)` index pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }
}

const GHOST: u32 = u32::MAX;
const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Tri {
    v: [u32; 3],
    /// `n[i]` is the triangle across the edge opposite `v[i]`.
    n: [u32; 3],
    alive: bool,
}

impl Tri {
    fn ghost_slot(&self) -> Option<usize> {
        self.v.iter().position(|&v| v == GHOST)
    }

    /// Directed edge opposite `v[i]`.
    fn edge(&self, i: usize) -> (u32, u32) {
        (self.v[(i + 1) % 3], self.v[(i + 2) % 3])
    }
}

struct Mesh<'a> {
    pts: &'a [Point],
    tris: Vec<Tri>,
    free: Vec<u32>,
    /// BFS marks: `2 * epoch` = in cavity, `2 * epoch + 1` = rejected.
    mark: Vec<u64>,
    epoch: u64,
    hint: u32,
    cavity: Vec<u32>,
    boundary: Vec<(u32, usize)>,
}

impl<'a> Mesh<'a> {
    fn new(pts: &'a [Point], capacity: usize) -> Self {
        Mesh {
            pts,
            tris: Vec::with_capacity(capacity),
            free: Vec::new(),
            mark: Vec::with_capacity(capacity),
            epoch: 0,
            hint: 0,
            cavity: Vec::new(),
            boundary: Vec::new(),
        }
    }

    fn pt(&self, v: u32) -> Point {
        self.pts[v as usize]
    }

    fn alloc(&mut self, v: [u32; 3], n: [u32; 3]) -> u32 {
        let tri = Tri { v, n, alive: true };
        if let Some(t) = self.free.pop() {
            self.tris[t as usize] = tri;
            t
        } else {
            self.tris.push(tri);
            self.mark.push(0);
            (self.tris.len() - 1) as u32
        }
    }

    /// Solid triangle `abc` (counterclockwise) plus its three ghosts.
    fn init(&mut self, a: u32, b: u32, c: u32) {
        let t0 = self.alloc([a, b, c], [NONE; 3]);
        let ga = self.alloc([b, a, GHOST], [NONE; 3]);
        let gb = self.alloc([c, b, GHOST], [NONE; 3]);
        let gc = self.alloc([a, c, GHOST], [NONE; 3]);
        let all = [t0, ga, gb, gc];
        for &t in &all {
            for i in 0..3 {
                let (u, v) = self.tris[t as usize].edge(i);
                for &s in &all {
                    if s == t {
                        continue;
                    }
                    if let Some(j) = (0..3).find(|&j| self.tris[s as usize].edge(j) == (v, u)) {
                        let _ = j;
                        self.tris[t as usize].n[i] = s;
                    }
                }
            }
        }
        self.hint = t0;
    }

    fn in_conflict(&self, t: u32, p: Point) -> bool {
        let tri = &self.tris[t as usize];
        match tri.ghost_slot() {
            Some(g) => {
                let (a, b) = tri.edge(g);
                let (pa, pb) = (self.pt(a), self.pt(b));
                let o = orient2d(pa, pb, p);
                o > 0.0 || (o == 0.0 && strictly_between(pa, pb, p))
            }
            None => {
                let [a, b, c] = tri.v;
                incircle(self.pt(a), self.pt(b), self.pt(c), p) > 0.0
            }
        }
    }

    /// A triangle in conflict with `p`: the solid triangle containing it or
    /// a ghost whose hull edge sees it.
    fn locate(&self, p: Point) -> u32 {
        let mut cur = self.hint;
        if let Some(g) = self.tris[cur as usize].ghost_slot() {
            cur = self.tris[cur as usize].n[g];
        }
        let limit = 4 * self.tris.len() + 64;
        let mut rot = 0usize;
        for _ in 0..limit {
            let tri = &self.tris[cur as usize];
            if tri.ghost_slot().is_some() {
                return cur;
            }
            rot = (rot + 1) % 3;
            let mut next = None;
            for k in 0..3 {
                let i = (k + rot) % 3;
                let (a, b) = tri.edge(i);
                if orient2d(self.pt(a), self.pt(b), p) < 0.0 {
                    next = Some(tri.n[i]);
                    break;
                }
            }
            match next {
                Some(n) => cur = n,
                None => return cur,
            }
        }
        log::debug!("walk did not terminate; scanning all triangles");
        self.locate_brute(p)
    }

    fn locate_brute(&self, p: Point) -> u32 {
        let mut ghost_hit = None;
        for (t, tri) in self.tris.iter().enumerate() {
            if !tri.alive {
                continue;
            }
            if tri.ghost_slot().is_some() {
                if ghost_hit.is_none() && self.in_conflict(t as u32, p) {
                    ghost_hit = Some(t as u32);
                }
                continue;
            }
            let inside = (0..3).all(|i| {
                let (a, b) = tri.edge(i);
                orient2d(self.pt(a), self.pt(b), p) >= 0.0
            });
            if inside {
                return t as u32;
            }
        }
        ghost_hit.expect("point is inside a triangle or visible from the hull")
    }

    /// Grows the conflict region from `seed`, skipping `excluded`.
    fn grow_cavity(&mut self, seed: u32, p: Point, excluded: &[u32]) {
        self.epoch += 1;
        let inside = 2 * self.epoch;
        let rejected = inside + 1;
        self.cavity.clear();
        self.boundary.clear();
        self.cavity.push(seed);
        self.mark[seed as usize] = inside;
        for &t in excluded {
            self.mark[t as usize] = rejected;
        }
        let mut head = 0;
        while head < self.cavity.len() {
            let t = self.cavity[head];
            head += 1;
            for i in 0..3 {
                let nb = self.tris[t as usize].n[i];
                let m = self.mark[nb as usize];
                if m == inside {
                    continue;
                }
                if m != rejected && self.in_conflict(nb, p) {
                    self.mark[nb as usize] = inside;
                    self.cavity.push(nb);
                } else {
                    self.mark[nb as usize] = rejected;
                    self.boundary.push((t, i));
                }
            }
        }
    }

    /// A cavity triangle whose boundary edge cannot be joined to `p` with a
    /// positively oriented triangle.
    fn invisible_edge(&self, p: Point) -> Option<u32> {
        self.boundary.iter().find_map(|&(t, i)| {
            let (a, b) = self.tris[t as usize].edge(i);
            if a == GHOST || b == GHOST {
                return None;
            }
            (orient2d(self.pt(a), self.pt(b), p) <= 0.0).then_some(t)
        })
    }

    fn insert(&mut self, vi: u32) {
        let p = self.pt(vi);
        let seed = self.locate(p);
        let mut excluded: Vec<u32> = Vec::new();
        loop {
            self.grow_cavity(seed, p, &excluded);
            match self.invisible_edge(p) {
                None => break,
                Some(t) if t != seed && excluded.len() < 64 => excluded.push(t),
                Some(_) => {
                    log::warn!("skipping point {vi} at {p:?}: inconsistent predicates");
                    return;
                }
            }
        }

        let mut starts: Vec<(u32, u32)> = Vec::with_capacity(self.boundary.len());
        let mut ends: Vec<(u32, u32)> = Vec::with_capacity(self.boundary.len());
        let boundary = std::mem::take(&mut self.boundary);
        for &(t, i) in &boundary {
            let (a, b) = self.tris[t as usize].edge(i);
            let outer = self.tris[t as usize].n[i];
            let nt = self.alloc([a, b, vi], [NONE, NONE, outer]);
            let back = &mut self.tris[outer as usize];
            let j = (0..3)
                .find(|&j| back.edge(j) == (b, a))
                .expect("outer triangle shares the boundary edge");
            back.n[j] = nt;
            starts.push((a, nt));
            ends.push((b, nt));
        }
        starts.sort_unstable();
        ends.sort_unstable();
        let find = |list: &[(u32, u32)], v: u32| {
            let k = list
                .binary_search_by_key(&v, |&(x, _)| x)
                .expect("cavity boundary is a closed cycle");
            list[k].1
        };
        for &(a, nt) in &starts {
            let b = self.tris[nt as usize].v[1];
            self.tris[nt as usize].n[0] = find(&starts, b);
            self.tris[nt as usize].n[1] = find(&ends, a);
        }

        let cavity = std::mem::take(&mut self.cavity);
        for &t in &cavity {
            self.tris[t as usize].alive = false;
            self.free.push(t);
        }
        self.cavity = cavity;
        self.boundary = boundary;
        self.hint = starts
            .iter()
            .map(|&(_, t)| t)
            .find(|&t| self.tris[t as usize].ghost_slot().is_none())
            .unwrap_or(starts[0].1);
    }
}

fn strictly_between(a: Point, b: Point, p: Point) -> bool {
    let dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
    let len2 = (b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2);
    dot > 0.0 && dot < len2
}

/// Position along a Hilbert curve on a 2^16 x 2^16 grid.
fn hilbert_index(x: u32, y: u32) -> u64 {
    let (mut x, mut y) = (x, y);
    let n: u32 = 1 << 16;
    let mut d: u64 = 0;
    let mut s = n / 2;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += (s as u64) * (s as u64) * ((3 * rx) ^ ry) as u64;
        if ry == 0 {
            if rx == 1 {
                x = n - 1 - x;
                y = n - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        s /= 2;
    }
    d
}

fn hilbert_order(pts: &[Point], ids: &mut [u32]) {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &i in ids.iter() {
        let p = pts[i as usize];
        x0 = x0.min(p[0]);
        y0 = y0.min(p[1]);
        x1 = x1.max(p[0]);
        y1 = y1.max(p[1]);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = 65535.0 / span;
    let mut keyed: Vec<(u64, u32)> = ids
        .iter()
        .map(|&i| {
            let p = pts[i as usize];
            let qx = ((p[0] - x0) * scale) as u32;
            let qy = ((p[1] - y0) * scale) as u32;
            (hilbert_index(qx.min(65535), qy.min(65535)), i)
        })
        .collect();
    keyed.sort_unstable();
    for (slot, (_, i)) in ids.iter_mut().zip(keyed) {
        *slot = i;
    }
}

/// Delaunay triangulation of `points` (non-finite points are ignored).
///
/// Exact duplicates are merged first. Fails with fewer than three distinct
/// points; when all points are collinear the result has no triangles and
/// status [`TriangulationStatus::Collinear`]. For cocircular points either
/// valid diagonal may be chosen.
pub fn delaunay(points: &[Point]) -> Result<Triangulation> {
    let (distinct, _) = dedup_points(points);
    if distinct.len() < 3 {
        return Err(Error::Degenerate(format!(
            "triangulation needs 3 distinct points, got {}",
            distinct.len()
        )));
    }
    let pts: Vec<Point> = distinct.iter().map(|&i| points[i]).collect();
    let (a, b) = (0u32, 1u32);
    let third = (2..pts.len()).find(|&c| orient2d(pts[0], pts[1], pts[c]) != 0.0);
    let Some(c) = third else {
        return Ok(Triangulation {
            points: points.to_vec(),
            triangles: Vec::new(),
            status: TriangulationStatus::Collinear,
        });
    };
    let c = c as u32;

    let mut mesh = Mesh::new(&pts, 2 * pts.len() + 16);
    if orient2d(pts[0], pts[1], pts[c as usize]) > 0.0 {
        mesh.init(a, b, c);
    } else {
        mesh.init(a, c, b);
    }
    let mut rest: Vec<u32> = (2..pts.len() as u32).filter(|&i| i != c).collect();
    hilbert_order(&pts, &mut rest);
    for vi in rest {
        mesh.insert(vi);
    }

    let triangles = mesh
        .tris
        .iter()
        .filter(|t| t.alive && t.ghost_slot().is_none())
        .map(|t| t.v.map(|v| distinct[v as usize]))
        .collect();
    Ok(Triangulation {
        points: points.to_vec(),
        triangles,
        status: TriangulationStatus::Complete,
    })
}
