use std::path::Path;
use std::sync::Arc;

use image::RgbaImage;

use super::{bbox_of, coords, Frame, Layer, RowTooltip};
use crate::colormap::{ColorMap, Rgba, Scale};
use crate::data::DataTable;
use crate::projection::{BoundingBox, ViewState};
use crate::render::{point_pixels, BatchPainter};
use crate::viewer::HotspotIndex;
use crate::{Error, Result};

/// How dots are colored.
#[derive(Debug, Clone)]
pub enum DotColor {
    Fixed(Rgba),
    /// Each dot colored by a numeric column, scaled against its maximum.
    ByColumn {
        column: String,
        cmap: ColorMap,
        scale: Scale,
    },
}

pub struct DotOptions {
    pub lat: String,
    pub lon: String,
    pub point_size: f64,
    pub color: DotColor,
    pub tooltip: Option<RowTooltip>,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions {
            lat: "lat".into(),
            lon: "lon".into(),
            point_size: 2.0,
            color: DotColor::Fixed([255, 0, 0, 255]),
            tooltip: None,
        }
    }
}

/// Drops points whose covered pixel rectangle repeats an earlier one. Only valid for
/// opaque marks of one color and size, where a repeat changes no pixel.
fn cull_overdraw(sx: &[f64], sy: &[f64], size: f64) -> (Vec<f64>, Vec<f64>) {
    let mut seen = std::collections::HashSet::with_capacity(sx.len() / 4);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&x, &y) in sx.iter().zip(sy) {
        let key = point_pixels([x as f32, y as f32], size as f32);
        if !(x.is_finite() && y.is_finite()) || seen.insert(key) {
            xs.push(x);
            ys.push(y);
        }
    }
    (xs, ys)
}

/// One square mark per row.
pub struct DotLayer {
    table: DataTable,
    lats: Vec<f64>,
    lons: Vec<f64>,
    colors: Option<Vec<Rgba>>,
    opts: DotOptions,
    painter: BatchPainter,
    hotspots: HotspotIndex<usize>,
}

impl DotLayer {
    pub fn new(table: &DataTable, opts: DotOptions) -> Result<Self> {
        let (lats, lons) = coords(table, &opts.lat, &opts.lon)?;
        let colors = match &opts.color {
            DotColor::Fixed(_) => None,
            DotColor::ByColumn {
                column,
                cmap,
                scale,
            } => {
                let values = table.numeric(column)?;
                let max = values.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
                Some(
                    values
                        .iter()
                        .map(|&v| {
                            if max > 0.0 && v.is_finite() {
                                cmap.to_color(v, max, *scale).expect("max is positive")
                            } else {
                                cmap.at(0.0)
                            }
                        })
                        .collect(),
                )
            }
        };
        Ok(DotLayer {
            table: table.clone(),
            lats,
            lons,
            colors,
            opts,
            painter: BatchPainter::new(),
            hotspots: HotspotIndex::new(),
        })
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.painter
    }

    pub fn hotspots(&self) -> &HotspotIndex<usize> {
        &self.hotspots
    }

    /// Tooltip text for the dot under `(x, y)`, if any.
    pub fn tooltip_at(&self, x: f64, y: f64) -> Option<String> {
        let f = self.opts.tooltip.as_ref()?;
        let &row = self.hotspots.query(x, y)?;
        Some(f(&self.table.row(row)))
    }
}

impl Layer for DotLayer {
    fn invalidate(&mut self, view: &ViewState) {
        let (sx, sy) = view.lonlat_to_screen_batch(&self.lons, &self.lats);
        self.painter.clear();
        match (&self.colors, &self.opts.color) {
            (Some(colors), _) => self.painter.points_colored(&sx, &sy, colors, self.opts.point_size),
            (None, DotColor::Fixed(c)) => {
                self.painter.set_color(*c);
                if c[3] == 255 {
                    let (xs, ys) = cull_overdraw(&sx, &sy, self.opts.point_size);
                    self.painter.points(&xs, &ys, self.opts.point_size);
                } else {
                    self.painter.points(&sx, &sy, self.opts.point_size);
                }
            }
            (None, DotColor::ByColumn { .. }) => unreachable!("colors are computed at construction"),
        }
        self.hotspots.clear();
        if self.opts.tooltip.is_some() {
            let size = self.opts.point_size.max(4.0);
            for (i, (&x, &y)) in sx.iter().zip(&sy).enumerate() {
                self.hotspots.add_centered(x, y, size, i);
            }
        }
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
        if let Some((mx, my)) = frame.mouse {
            if let Some(text) = self.tooltip_at(mx, my) {
                frame.ui.tooltip(text, (mx, my));
            }
        }
    }

    fn bbox(&self) -> Option<BoundingBox> {
        bbox_of(&self.lons, &self.lats)
    }
}

pub struct MarkersOptions {
    pub lat: String,
    pub lon: String,
    /// Image scale factor.
    pub scale: f64,
    pub tooltip: Option<RowTooltip>,
}

impl Default for MarkersOptions {
    fn default() -> Self {
        MarkersOptions {
            lat: "lat".into(),
            lon: "lon".into(),
            scale: 1.0,
            tooltip: None,
        }
    }
}

/// An image centered on every row's position.
pub struct MarkersLayer {
    table: DataTable,
    lats: Vec<f64>,
    lons: Vec<f64>,
    image: Arc<RgbaImage>,
    opts: MarkersOptions,
    painter: BatchPainter,
    hotspots: HotspotIndex<usize>,
}

impl MarkersLayer {
    /// Loads the marker image (PNG or JPEG) from `image_path`.
    pub fn new(table: &DataTable, image_path: impl AsRef<Path>, opts: MarkersOptions) -> Result<Self> {
        let path = image_path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let image = image::load_from_memory(&bytes)?.to_rgba8();
        Self::with_image(table, Arc::new(image), opts)
    }

    pub fn with_image(table: &DataTable, image: Arc<RgbaImage>, opts: MarkersOptions) -> Result<Self> {
        if !(opts.scale > 0.0 && opts.scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("marker scale {} must be positive", opts.scale)));
        }
        let (lats, lons) = coords(table, &opts.lat, &opts.lon)?;
        Ok(MarkersLayer {
            table: table.clone(),
            lats,
            lons,
            image,
            opts,
            painter: BatchPainter::new(),
            hotspots: HotspotIndex::new(),
        })
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.painter
    }

    pub fn tooltip_at(&self, x: f64, y: f64) -> Option<String> {
        let f = self.opts.tooltip.as_ref()?;
        let &row = self.hotspots.query(x, y)?;
        Some(f(&self.table.row(row)))
    }
}

impl Layer for MarkersLayer {
    fn invalidate(&mut self, view: &ViewState) {
        let (sx, sy) = view.lonlat_to_screen_batch(&self.lons, &self.lats);
        self.painter.clear();
        self.painter.sprites(&self.image, &sx, &sy, self.opts.scale);
        self.hotspots.clear();
        if self.opts.tooltip.is_some() {
            let w = self.image.width() as f64 * self.opts.scale;
            let h = self.image.height() as f64 * self.opts.scale;
            for (i, (&x, &y)) in sx.iter().zip(&sy).enumerate() {
                self.hotspots.add(
                    crate::geometry::Rect::new(x - w / 2.0, y - h / 2.0, w, h),
                    i,
                );
            }
        }
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
        if let Some((mx, my)) = frame.mouse {
            if let Some(text) = self.tooltip_at(mx, my) {
                frame.ui.tooltip(text, (mx, my));
            }
        }
    }

    fn bbox(&self) -> Option<BoundingBox> {
        bbox_of(&self.lons, &self.lats)
    }
}
