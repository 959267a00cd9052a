use std::path::PathBuf;

use crate::colormap::Rgba;
use crate::render::font::{text_width, GLYPH_SIZE};
use crate::render::Canvas;

const TEXT: Rgba = [255, 255, 255, 255];
const BACKDROP: Rgba = [0, 0, 0, 160];
const PAD: i64 = 3;
/// Tooltip box offset from the cursor.
pub const TOOLTIP_OFFSET: (f64, f64) = (8.0, -8.0);

/// On-screen text drawn above all layers: status lines in the top-left
/// corner, an attribution line in the bottom-right corner and at most one
/// tooltip near the cursor.
#[derive(Debug, Clone, Default)]
pub struct UiManager {
    status: Vec<String>,
    attribution: String,
    tooltip: Option<(String, (f64, f64))>,
    screenshot: Option<Option<PathBuf>>,
}

impl UiManager {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces the status lines.
    pub fn set_status<I: IntoIterator<Item = S>, S: Into<String>>(&mut self, lines: I) {
        self.status = lines.into_iter().map(Into::into).collect();
    }

    pub fn add_status(&mut self, line: impl Into<String>) {
        self.status.push(line.into());
    }

    pub fn status(&self) -> &[String] {
        &self.status
    }

    pub fn set_attribution(&mut self, text: impl Into<String>) {
        self.attribution = text.into();
    }

    /// Shows `text` next to the cursor position `at` for this frame.
    pub fn tooltip(&mut self, text: impl Into<String>, at: (f64, f64)) {
        self.tooltip = Some((text.into(), at));
    }

    pub fn current_tooltip(&self) -> Option<&str> {
        self.tooltip.as_ref().map(|(t, _)| t.as_str())
    }

    pub(crate) fn clear_tooltip(&mut self) {
        self.tooltip = None;
    }

    /// Asks the viewer to save the current frame once it is drawn, to
    /// `path` or to a file named after the frame index.
    pub fn request_screenshot(&mut self, path: Option<PathBuf>) {
        self.screenshot = Some(path);
    }

    pub(crate) fn take_screenshot_request(&mut self) -> Option<Option<PathBuf>> {
        self.screenshot.take()
    }

    /// Top-left corner of the tooltip box for a `w` x `h` box, offset from
    /// the cursor and kept inside the canvas.
    pub fn tooltip_origin(at: (f64, f64), w: u32, h: u32, canvas_w: u32, canvas_h: u32) -> (i64, i64) {
        let x = (at.0 + TOOLTIP_OFFSET.0) as i64;
        let y = (at.1 + TOOLTIP_OFFSET.1) as i64 - h as i64;
        let x = x.min(canvas_w as i64 - w as i64).max(0);
        let y = y.min(canvas_h as i64 - h as i64).max(0);
        (x, y)
    }

    pub fn draw(&self, canvas: &mut Canvas) {
        let line_h = GLYPH_SIZE as i64 + 2 * PAD;
        for (i, line) in self.status.iter().enumerate() {
            let y = i as i64 * line_h;
            boxed_text(canvas, 0, y, line);
        }
        if !self.attribution.is_empty() {
            let w = text_width(&self.attribution, 1) as i64 + 2 * PAD;
            let x = canvas.width() as i64 - w;
            let y = canvas.height() as i64 - line_h;
            boxed_text(canvas, x, y, &self.attribution);
        }
        if let Some((text, at)) = &self.tooltip {
            let w = text_width(text, 1) + 2 * PAD as u32;
            let h = line_h as u32;
            let (x, y) = Self::tooltip_origin(*at, w, h, canvas.width(), canvas.height());
            boxed_text(canvas, x, y, text);
        }
    }
}

fn boxed_text(canvas: &mut Canvas, x: i64, y: i64, text: &str) {
    let w = text_width(text, 1) as f32 + 2.0 * PAD as f32;
    let h = GLYPH_SIZE as f32 + 2.0 * PAD as f32;
    let (x0, y0) = (x as f32, y as f32);
    canvas.draw_triangles(
        &[[x0, y0], [x0 + w, y0], [x0 + w, y0 + h], [x0, y0], [x0 + w, y0 + h], [x0, y0 + h]],
        &[BACKDROP, BACKDROP],
    );
    canvas.draw_text(x + PAD, y + PAD, text, TEXT, 1);
}
