use std::sync::Arc;

use image::RgbaImage;

use super::canvas::{Canvas, Sprite};
use super::earcut;
use crate::colormap::Rgba;
use crate::geometry::Point;

/// Buffers primitives with their colors and flushes them to a [`Canvas`]
/// with one draw call per non-empty primitive class, in the order fills,
/// lines, points, sprites.
///
/// Coordinates are screen pixels; entries with a NaN coordinate are
/// dropped. Buffers persist across [`batch_draw`](Self::batch_draw) calls
/// until [`clear`](Self::clear).
#[derive(Debug, Clone)]
pub struct BatchPainter {
    color: Rgba,
    fill_verts: Vec<[f32; 2]>,
    fill_colors: Vec<Rgba>,
    segments: Vec<[f32; 4]>,
    seg_widths: Vec<f32>,
    seg_colors: Vec<Rgba>,
    points: Vec<[f32; 2]>,
    point_sizes: Vec<f32>,
    point_colors: Vec<Rgba>,
    sprites: Vec<Sprite>,
}

impl Default for BatchPainter {
    fn default() -> Self {
        Self::new()
    }
}

fn finite(v: f64) -> bool {
    v.is_finite()
}

impl BatchPainter {
    pub fn new() -> Self {
        BatchPainter {
            color: [0, 0, 0, 255],
            fill_verts: Vec::new(),
            fill_colors: Vec::new(),
            segments: Vec::new(),
            seg_widths: Vec::new(),
            seg_colors: Vec::new(),
            points: Vec::new(),
            point_sizes: Vec::new(),
            point_colors: Vec::new(),
            sprites: Vec::new(),
        }
    }

    pub fn set_color(&mut self, color: Rgba) {
        self.color = color;
    }

    pub fn color(&self) -> Rgba {
        self.color
    }

    pub fn clear(&mut self) {
        self.fill_verts.clear();
        self.fill_colors.clear();
        self.segments.clear();
        self.seg_widths.clear();
        self.seg_colors.clear();
        self.points.clear();
        self.point_sizes.clear();
        self.point_colors.clear();
        self.sprites.clear();
    }

    pub fn is_empty(&self) -> bool {
        self.fill_colors.is_empty()
            && self.seg_colors.is_empty()
            && self.point_colors.is_empty()
            && self.sprites.is_empty()
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.segments.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.fill_colors.len()
    }

    pub fn sprite_count(&self) -> usize {
        self.sprites.len()
    }

    /// Buffered points as `[x, y]`.
    pub fn points_buffer(&self) -> &[[f32; 2]] {
        &self.points
    }

    /// Buffered segments as `[x0, y0, x1, y1]` with their colors.
    pub fn lines_buffer(&self) -> (&[[f32; 4]], &[Rgba]) {
        (&self.segments, &self.seg_colors)
    }

    /// Buffered filled triangles, three vertices each, with their colors.
    pub fn fills_buffer(&self) -> (&[[f32; 2]], &[Rgba]) {
        (&self.fill_verts, &self.fill_colors)
    }

    pub fn points(&mut self, xs: &[f64], ys: &[f64], size_px: f64) {
        assert_eq!(xs.len(), ys.len(), "point coordinate arrays differ in length");
        self.points.reserve(xs.len());
        for (&x, &y) in xs.iter().zip(ys) {
            if finite(x) && finite(y) {
                self.points.push([x as f32, y as f32]);
                self.point_sizes.push(size_px as f32);
                self.point_colors.push(self.color);
            }
        }
    }

    /// Points with one color each.
    pub fn points_colored(&mut self, xs: &[f64], ys: &[f64], colors: &[Rgba], size_px: f64) {
        assert!(xs.len() == ys.len() && xs.len() == colors.len());
        for ((&x, &y), &c) in xs.iter().zip(ys).zip(colors) {
            if finite(x) && finite(y) {
                self.points.push([x as f32, y as f32]);
                self.point_sizes.push(size_px as f32);
                self.point_colors.push(c);
            }
        }
    }

    pub fn lines(&mut self, x0: &[f64], y0: &[f64], x1: &[f64], y1: &[f64], width_px: f64) {
        let n = x0.len();
        assert!(y0.len() == n && x1.len() == n && y1.len() == n, "line arrays differ in length");
        for i in 0..n {
            self.line(x0[i], y0[i], x1[i], y1[i], width_px);
        }
    }

    pub fn line(&mut self, x0: f64, y0: f64, x1: f64, y1: f64, width_px: f64) {
        if [x0, y0, x1, y1].into_iter().all(finite) {
            self.segments.push([x0 as f32, y0 as f32, x1 as f32, y1 as f32]);
            self.seg_widths.push(width_px as f32);
            self.seg_colors.push(self.color);
        }
    }

    /// Closed outline through the ring's vertices.
    pub fn poly_outline(&mut self, ring: &[Point], width_px: f64) {
        let n = ring.len();
        if n < 2 {
            return;
        }
        for i in 0..n {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            if a != b {
                self.line(a[0], a[1], b[0], b[1], width_px);
            }
        }
    }

    /// Fills a simple polygon by ear clipping. A self-intersecting ring is
    /// drawn as an outline instead. Returns whether the ring was filled.
    pub fn poly_fill(&mut self, ring: &[Point]) -> bool {
        match earcut::triangulate(ring) {
            Some(tris) => {
                for t in tris {
                    self.triangle(ring[t[0]], ring[t[1]], ring[t[2]]);
                }
                true
            }
            None => {
                log::warn!("polygon with {} vertices is not simple; drawing its outline", ring.len());
                self.poly_outline(ring, 1.0);
                false
            }
        }
    }

    pub fn triangle(&mut self, a: Point, b: Point, c: Point) {
        if [a, b, c].iter().flatten().all(|&v| finite(v)) {
            for p in [a, b, c] {
                self.fill_verts.push([p[0] as f32, p[1] as f32]);
            }
            self.fill_colors.push(self.color);
        }
    }

    /// Axis-aligned filled rectangle.
    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64) {
        self.triangle([x, y], [x + w, y], [x + w, y + h]);
        self.triangle([x, y], [x + w, y + h], [x, y + h]);
    }

    /// One copy of `image` centered at each position, scaled by `scale`.
    pub fn sprites(&mut self, image: &Arc<RgbaImage>, xs: &[f64], ys: &[f64], scale: f64) {
        assert_eq!(xs.len(), ys.len(), "sprite coordinate arrays differ in length");
        let w = image.width() as f64 * scale;
        let h = image.height() as f64 * scale;
        for (&x, &y) in xs.iter().zip(ys) {
            if finite(x) && finite(y) {
                self.sprites.push(Sprite {
                    image: Arc::clone(image),
                    x: (x - w / 2.0) as f32,
                    y: (y - h / 2.0) as f32,
                    w: w as f32,
                    h: h as f32,
                });
            }
        }
    }

    /// `image` stretched over the rectangle `(x, y, w, h)`.
    pub fn texture(&mut self, image: Arc<RgbaImage>, x: f64, y: f64, w: f64, h: f64) {
        if [x, y, w, h].into_iter().all(finite) {
            self.sprites.push(Sprite {
                image,
                x: x as f32,
                y: y as f32,
                w: w as f32,
                h: h as f32,
            });
        }
    }

    pub fn batch_draw(&self, canvas: &mut Canvas) {
        canvas.draw_triangles(&self.fill_verts, &self.fill_colors);
        canvas.draw_lines(&self.segments, &self.seg_widths, &self.seg_colors);
        canvas.draw_points(&self.points, &self.point_sizes, &self.point_colors);
        canvas.draw_sprites(&self.sprites);
    }
}
