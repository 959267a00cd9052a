use super::{bbox_of, coords, Frame, Layer};
use crate::colormap::Rgba;
use crate::data::DataTable;
use crate::projection::{BoundingBox, ViewState};
use crate::render::BatchPainter;
use crate::Result;

pub struct TrailOptions {
    pub lat: String,
    pub lon: String,
    /// How many earlier positions stay visible behind the current one.
    pub trail: usize,
    pub color: Rgba,
    pub point_size: f64,
}

impl Default for TrailOptions {
    fn default() -> Self {
        TrailOptions {
            lat: "lat".into(),
            lon: "lon".into(),
            trail: 20,
            color: [255, 0, 0, 255],
            point_size: 6.0,
        }
    }
}

/// Animates a time-ordered track: each draw shows the row at the frame
/// counter plus a fading trail, then advances the counter by one. The
/// counter wraps to zero after the last row.
pub struct TrailLayer {
    lats: Vec<f64>,
    lons: Vec<f64>,
    sx: Vec<f64>,
    sy: Vec<f64>,
    opts: TrailOptions,
    frame_counter: usize,
    painter: BatchPainter,
}

impl TrailLayer {
    pub fn new(table: &DataTable, opts: TrailOptions) -> Result<Self> {
        let (lats, lons) = coords(table, &opts.lat, &opts.lon)?;
        Ok(TrailLayer {
            lats,
            lons,
            sx: Vec::new(),
            sy: Vec::new(),
            opts,
            frame_counter: 0,
            painter: BatchPainter::new(),
        })
    }

    /// Index of the row the next draw shows.
    pub fn frame_counter(&self) -> usize {
        self.frame_counter
    }
}

impl Layer for TrailLayer {
    fn invalidate(&mut self, view: &ViewState) {
        let (sx, sy) = view.lonlat_to_screen_batch(&self.lons, &self.lats);
        self.sx = sx;
        self.sy = sy;
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        let n = self.sx.len();
        if n == 0 {
            return;
        }
        let i = self.frame_counter;
        self.painter.clear();
        let [r, g, b, a] = self.opts.color;
        let first = i.saturating_sub(self.opts.trail);
        for k in first..i {
            let age = (i - k) as f64 / (self.opts.trail + 1) as f64;
            let alpha = (a as f64 * (1.0 - age)).round() as u8;
            self.painter.set_color([r, g, b, alpha]);
            self.painter.points(&self.sx[k..=k], &self.sy[k..=k], self.opts.point_size / 2.0);
        }
        self.painter.set_color(self.opts.color);
        self.painter.points(&self.sx[i..=i], &self.sy[i..=i], self.opts.point_size);
        self.painter.batch_draw(frame.canvas);
        self.frame_counter = (i + 1) % n;
    }

    fn bbox(&self) -> Option<BoundingBox> {
        bbox_of(&self.lons, &self.lats)
    }
}
