use std::path::Path;
use std::sync::Arc;

use image::RgbaImage;

use crate::colormap::Rgba;
use crate::{Error, Result};

/// A textured rectangle, sampled nearest-neighbor.
#[derive(Debug, Clone)]
pub struct Sprite {
    pub image: Arc<RgbaImage>,
    /// Top-left corner and size of the destination rectangle, in pixels.
    pub x: f32,
    pub y: f32,
    pub w: f32,
    pub h: f32,
}

/// Software framebuffer: RGBA8, top-left origin, source-over blending.
///
/// Every `draw_*` call that receives a non-empty batch counts as one draw
/// call, the unit the renderer's budget is expressed in.
#[derive(Clone)]
pub struct Canvas {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
    draw_calls: u64,
}

impl std::fmt::Debug for Canvas {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Canvas")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("draw_calls", &self.draw_calls)
            .finish()
    }
}

/// `f64::floor` for values well inside the i64 range. Baseline x86-64 has
/// no rounding instruction, so the std version is a libm call.
#[inline]
fn floor(x: f64) -> f64 {
    if x.is_nan() || x.abs() >= 1e15 {
        return x.floor();
    }
    let t = x as i64 as f64;
    if t > x {
        t - 1.0
    } else {
        t
    }
}

#[inline]
fn ceil(x: f64) -> f64 {
    -floor(-x)
}

/// Ceiling as a saturating i32; NaN maps to 0.
#[inline]
fn ceil_i32(v: f32) -> i32 {
    let i = v as i32;
    i.saturating_add(((i as f32) < v) as i32)
}

/// Unclipped pixel rectangle `[x0, y0, x1, y1)` covered by a point of
/// `size` centered at `p`: the pixels whose centers fall inside the square.
#[inline]
pub fn point_pixels(p: [f32; 2], size: f32) -> [i32; 4] {
    let half = size.max(1.0) * 0.5;
    [
        ceil_i32(p[0] - half - 0.5),
        ceil_i32(p[1] - half - 0.5),
        ceil_i32(p[0] + half - 0.5),
        ceil_i32(p[1] + half - 0.5),
    ]
}

#[inline]
fn blend(dst: &mut [u8], c: Rgba) {
    let a = c[3] as u32;
    if a == 255 {
        dst.copy_from_slice(&c);
        return;
    }
    if a == 0 {
        return;
    }
    let ia = 255 - a;
    for k in 0..3 {
        dst[k] = ((c[k] as u32 * a + dst[k] as u32 * ia + 127) / 255) as u8;
    }
    dst[3] = (a + (dst[3] as u32 * ia + 127) / 255) as u8;
}

/// Edge function `a*x + b*y + c`, positive inside.
#[derive(Clone, Copy)]
struct Edge {
    a: f64,
    b: f64,
    c: f64,
    /// Boundary column as `dudy * y + u0`, in pixel-index units.
    dudy: f64,
    u0: f64,
    /// Whether points exactly on the edge are covered. Two triangles sharing
    /// an edge see opposite coefficients, so exactly one of them owns it.
    inclusive: bool,
}

impl Edge {
    fn new(p: [f64; 2], q: [f64; 2]) -> Edge {
        // Equals cross(q - p, r - p) at r = (x, y).
        let a = p[1] - q[1];
        let b = q[0] - p[0];
        let c = -(a * p[0] + b * p[1]);
        let (dudy, u0) = if a != 0.0 { (-b / a, -c / a - 0.5) } else { (0.0, 0.0) };
        Edge {
            a,
            b,
            c,
            dudy,
            u0,
            inclusive: a > 0.0 || (a == 0.0 && b > 0.0),
        }
    }
}

impl Canvas {
    pub fn new(width: u32, height: u32) -> Self {
        Canvas {
            width,
            height,
            pixels: vec![0; width as usize * height as usize * 4],
            draw_calls: 0,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Draw calls issued since creation or the last [`reset_draw_calls`].
    ///
    /// [`reset_draw_calls`]: Canvas::reset_draw_calls
    pub fn draw_calls(&self) -> u64 {
        self.draw_calls
    }

    pub fn reset_draw_calls(&mut self) {
        self.draw_calls = 0;
    }

    pub fn clear(&mut self, color: Rgba) {
        for px in self.pixels.chunks_exact_mut(4) {
            px.copy_from_slice(&color);
        }
    }

    pub fn pixel(&self, x: u32, y: u32) -> Rgba {
        let i = (y as usize * self.width as usize + x as usize) * 4;
        self.pixels[i..i + 4].try_into().unwrap()
    }

    pub fn raw(&self) -> &[u8] {
        &self.pixels
    }

    pub fn read_pixels(&self) -> RgbaImage {
        RgbaImage::from_raw(self.width, self.height, self.pixels.clone())
            .expect("buffer matches dimensions")
    }

    #[inline]
    fn fill_span(&mut self, y: usize, x0: usize, x1: usize, c: Rgba) {
        let row = y * self.width as usize * 4;
        for px in self.pixels[row + x0 * 4..row + x1 * 4].chunks_exact_mut(4) {
            blend(px, c);
        }
    }

    /// Fills pixels whose centers fall in `[x, x + w) x [y, y + h)`.
    fn fill_rect(&mut self, x: f32, y: f32, w: f32, h: f32, c: Rgba) {
        let (x0, x1) = self.pixel_range(x, x + w, self.width);
        let (y0, y1) = self.pixel_range(y, y + h, self.height);
        for row in y0..y1 {
            self.fill_span(row, x0, x1, c);
        }
    }

    /// Pixel indices whose centers lie in `[lo, hi)`, clipped to `[0, n)`.
    #[inline]
    fn pixel_range(&self, lo: f32, hi: f32, n: u32) -> (usize, usize) {
        let a = ceil_i32(lo - 0.5).max(0);
        let b = ceil_i32(hi - 0.5).min(n as i32);
        if b > a {
            (a as usize, b as usize)
        } else {
            (0, 0)
        }
    }

    /// Screen-aligned squares of side `sizes[i]` centered at `xy[i]`. A point
    /// smaller than a pixel still covers the pixel it falls in.
    pub fn draw_points(&mut self, xy: &[[f32; 2]], sizes: &[f32], colors: &[Rgba]) {
        assert!(xy.len() == sizes.len() && xy.len() == colors.len());
        if xy.is_empty() {
            return;
        }
        self.draw_calls += 1;
        let (w, h) = (self.width as i32, self.height as i32);
        let stride = self.width as usize * 4;
        for ((p, &s), &c) in xy.iter().zip(sizes).zip(colors) {
            let [x0, y0, x1, y1] = point_pixels(*p, s);
            let (x0, y0, x1, y1) = (x0.max(0), y0.max(0), x1.min(w), y1.min(h));
            if x1 <= x0 || y1 <= y0 {
                continue;
            }
            for row in y0 as usize..y1 as usize {
                let base = row * stride;
                let span = &mut self.pixels[base + x0 as usize * 4..base + x1 as usize * 4];
                if c[3] == 255 {
                    for px in span.chunks_exact_mut(4) {
                        px.copy_from_slice(&c);
                    }
                } else {
                    for px in span.chunks_exact_mut(4) {
                        blend(px, c);
                    }
                }
            }
        }
    }

    /// Filled triangles; `verts` holds three vertices per entry of `colors`.
    pub fn draw_triangles(&mut self, verts: &[[f32; 2]], colors: &[Rgba]) {
        assert_eq!(verts.len(), colors.len() * 3);
        if colors.is_empty() {
            return;
        }
        self.draw_calls += 1;
        for (t, &c) in verts.chunks_exact(3).zip(colors) {
            self.raster_triangle(t[0], t[1], t[2], c);
        }
    }

    /// Line segments `[x0, y0, x1, y1]` drawn as quads `widths[i]` wide.
    pub fn draw_lines(&mut self, segments: &[[f32; 4]], widths: &[f32], colors: &[Rgba]) {
        assert!(segments.len() == widths.len() && segments.len() == colors.len());
        if segments.is_empty() {
            return;
        }
        self.draw_calls += 1;
        for ((s, &w), &c) in segments.iter().zip(widths).zip(colors) {
            let (dx, dy) = (s[2] - s[0], s[3] - s[1]);
            let len = (dx * dx + dy * dy).sqrt();
            if len == 0.0 || !len.is_finite() {
                continue;
            }
            let h = w.max(1.0) / 2.0;
            let (nx, ny) = (-dy / len * h, dx / len * h);
            let q = [
                [s[0] + nx, s[1] + ny],
                [s[2] + nx, s[3] + ny],
                [s[2] - nx, s[3] - ny],
                [s[0] - nx, s[1] - ny],
            ]
            .map(|p| [p[0] as f64, p[1] as f64]);
            // (nx, ny) is the direction rotated by +90 degrees, so this
            // order makes the edge functions negative inside.
            self.raster_convex(&[q[0], q[3], q[2], q[1]], c);
        }
    }

    pub fn draw_sprites(&mut self, sprites: &[Sprite]) {
        if sprites.is_empty() {
            return;
        }
        self.draw_calls += 1;
        for s in sprites {
            self.blit(s);
        }
    }

    /// Copies `image` to the top-left corner `(x, y)` at its native size.
    pub fn draw_image(&mut self, image: &RgbaImage, x: i64, y: i64) {
        self.draw_calls += 1;
        let (iw, ih) = (image.width() as i64, image.height() as i64);
        let x0 = x.max(0);
        let x1 = (x + iw).min(self.width as i64);
        let y0 = y.max(0);
        let y1 = (y + ih).min(self.height as i64);
        if x0 >= x1 || y0 >= y1 {
            return;
        }
        let src = image.as_raw();
        for row in y0..y1 {
            let sy = (row - y) as usize;
            for col in x0..x1 {
                let sx = (col - x) as usize;
                let si = (sy * iw as usize + sx) * 4;
                let c: Rgba = src[si..si + 4].try_into().unwrap();
                let di = (row as usize * self.width as usize + col as usize) * 4;
                blend(&mut self.pixels[di..di + 4], c);
            }
        }
    }

    fn blit(&mut self, s: &Sprite) {
        let (iw, ih) = (s.image.width(), s.image.height());
        if iw == 0 || ih == 0 || s.w <= 0.0 || s.h <= 0.0 {
            return;
        }
        let (x0, x1) = self.pixel_range(s.x, s.x + s.w, self.width);
        let (y0, y1) = self.pixel_range(s.y, s.y + s.h, self.height);
        let src = s.image.as_raw();
        for row in y0..y1 {
            let v = (((row as f32 + 0.5 - s.y) / s.h) * ih as f32) as u32;
            let v = v.min(ih - 1) as usize;
            for col in x0..x1 {
                let u = (((col as f32 + 0.5 - s.x) / s.w) * iw as f32) as u32;
                let u = u.min(iw - 1) as usize;
                let si = (v * iw as usize + u) * 4;
                let c: Rgba = src[si..si + 4].try_into().unwrap();
                let di = (row * self.width as usize + col) * 4;
                blend(&mut self.pixels[di..di + 4], c);
            }
        }
    }

    /// Scanline rasterization sampling pixel centers, with a tie rule so
    /// that triangles sharing an edge never both cover a pixel.
    fn raster_triangle(&mut self, p0: [f32; 2], p1: [f32; 2], p2: [f32; 2], c: Rgba) {
        let v = [p0, p1, p2].map(|p| [p[0] as f64, p[1] as f64]);
        let area = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
        if area == 0.0 || !area.is_finite() {
            return;
        }
        // Reorder so the edge functions are positive inside.
        if area > 0.0 {
            self.raster_convex(&v, c);
        } else {
            self.raster_convex(&[v[0], v[2], v[1]], c);
        }
    }

    /// Fills a convex polygon whose vertices are ordered so that every edge
    /// function is positive inside.
    fn raster_convex(&mut self, v: &[[f64; 2]], c: Rgba) {
        let n = v.len();
        let mut edges = [Edge::new([0.0; 2], [0.0; 2]); 4];
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for i in 0..n {
            edges[i] = Edge::new(v[i], v[(i + 1) % n]);
            xmin = xmin.min(v[i][0]);
            xmax = xmax.max(v[i][0]);
            ymin = ymin.min(v[i][1]);
            ymax = ymax.max(v[i][1]);
        }
        let edges = &edges[..n];
        let row0 = ceil(ymin - 0.5).max(0.0);
        let row1 = floor(ymax - 0.5).min(self.height as f64 - 1.0);
        let col_min = ceil(xmin - 0.5).max(0.0);
        let col_max = floor(xmax - 0.5).min(self.width as f64 - 1.0);
        if row1 < row0 || col_max < col_min {
            return;
        }
        for row in row0 as usize..=row1 as usize {
            let py = row as f64 + 0.5;
            let mut lo = col_min;
            let mut hi = col_max;
            for e in edges {
                if e.a == 0.0 {
                    let rest = e.b * py + e.c;
                    if rest < 0.0 || (rest == 0.0 && !e.inclusive) {
                        hi = -1.0;
                    }
                    continue;
                }
                // Pixel column i has center i + 0.5; solve a*(i + 0.5) + b*py + c >= 0.
                let u = e.dudy * py + e.u0;
                if e.a > 0.0 {
                    let first = if e.inclusive { ceil(u) } else { floor(u) + 1.0 };
                    lo = lo.max(first);
                } else {
                    let last = if e.inclusive { floor(u) } else { ceil(u) - 1.0 };
                    hi = hi.min(last);
                }
            }
            if hi >= lo {
                self.fill_span(row, lo as usize, hi as usize + 1, c);
            }
        }
    }

    /// 8x8 bitmap text with its top-left corner at `(x, y)`, each font pixel
    /// drawn as a `scale` x `scale` block. Only ASCII is supported; other
    /// characters render as `?`.
    pub fn draw_text(&mut self, x: i64, y: i64, text: &str, color: Rgba, scale: u32) {
        if text.is_empty() {
            return;
        }
        self.draw_calls += 1;
        let s = scale.max(1) as i64;
        for (i, ch) in text.chars().enumerate() {
            let glyph = super::font::glyph(ch);
            let gx = x + i as i64 * 8 * s;
            for (r, bits) in glyph.iter().enumerate() {
                for col in 0..8 {
                    if bits & (1 << col) == 0 {
                        continue;
                    }
                    let px = gx + col as i64 * s;
                    let py = y + r as i64 * s;
                    self.fill_rect(px as f32, py as f32, s as f32, s as f32, color);
                }
            }
        }
    }

    pub fn write_png(&self, path: impl AsRef<Path>) -> Result<()> {
        write_png(&self.read_pixels(), path)
    }
}

pub fn write_png(image: &RgbaImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    image.save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const RED: Rgba = [255, 0, 0, 255];

    fn count(c: &Canvas, color: Rgba) -> usize {
        c.raw().chunks_exact(4).filter(|p| *p == color).count()
    }

    #[test]
    fn clear_and_read() {
        let mut c = Canvas::new(7, 5);
        c.clear([255; 4]);
        let img = c.read_pixels();
        assert_eq!(img.dimensions(), (7, 5));
        assert!(img.pixels().all(|p| p.0 == [255; 4]));
        assert_eq!(c.draw_calls(), 0);
    }

    #[test]
    fn unit_point_hits_its_pixel() {
        let mut c = Canvas::new(10, 10);
        c.draw_points(&[[3.2, 4.7]], &[1.0], &[RED]);
        assert_eq!(c.pixel(3, 4), RED);
        assert_eq!(count(&c, RED), 1);
    }

    #[test]
    fn square_point_size() {
        let mut c = Canvas::new(20, 20);
        c.draw_points(&[[10.0, 10.0]], &[4.0], &[RED]);
        assert_eq!(count(&c, RED), 16);
    }

    #[test]
    fn shared_edge_not_blended_twice() {
        let mut c = Canvas::new(16, 16);
        let half = [0, 0, 255, 128];
        // Two triangles covering the square [2, 12]^2 exactly once.
        let v = [[2.0, 2.0], [12.0, 2.0], [12.0, 12.0], [2.0, 2.0], [12.0, 12.0], [2.0, 12.0]];
        c.draw_triangles(&v, &[half, half]);
        let expect = c.pixel(5, 5);
        let mut covered = 0;
        for y in 0..16 {
            for x in 0..16 {
                let p = c.pixel(x, y);
                if p != [0; 4] {
                    assert_eq!(p, expect, "({x},{y})");
                    covered += 1;
                }
            }
        }
        assert_eq!(covered, 100);
        assert_eq!(c.draw_calls(), 1);
    }

    #[test]
    fn horizontal_line_width() {
        let mut c = Canvas::new(20, 20);
        c.draw_lines(&[[2.0, 10.0, 12.0, 10.0]], &[2.0], &[RED]);
        assert_eq!(count(&c, RED), 20);
    }

    #[test]
    fn blending_half_alpha() {
        let mut c = Canvas::new(1, 1);
        c.clear([255, 255, 255, 255]);
        c.draw_points(&[[0.5, 0.5]], &[1.0], &[[0, 0, 0, 128]]);
        assert_eq!(c.pixel(0, 0), [127, 127, 127, 255]);
    }

    #[test]
    fn sprite_scaled() {
        let img = Arc::new(RgbaImage::from_pixel(2, 2, image::Rgba(RED)));
        let mut c = Canvas::new(10, 10);
        c.draw_sprites(&[Sprite { image: img, x: 1.0, y: 1.0, w: 4.0, h: 4.0 }]);
        assert_eq!(count(&c, RED), 16);
    }

    #[test]
    fn text_draws_something() {
        let mut c = Canvas::new(40, 10);
        c.draw_text(0, 0, "Hi", RED, 1);
        assert!(count(&c, RED) > 0);
    }
}
