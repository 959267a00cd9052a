use std::sync::Arc;

use super::{bbox_of, coords, grid_image, Frame, Layer};
use crate::colormap::{ColorMap, Scale};
use crate::data::DataTable;
use crate::geometry::{bin2d, kde_grid, Grid2D, KdeParams, Rect};
use crate::projection::{BoundingBox, ViewState};
use crate::render::BatchPainter;
use crate::Result;

pub struct HistOptions {
    pub lat: String,
    pub lon: String,
    pub binsize: f64,
    pub scale: Scale,
    pub cmap: ColorMap,
    pub show_zero: bool,
    /// Show the count of the bin under the cursor.
    pub tooltip: bool,
}

impl Default for HistOptions {
    fn default() -> Self {
        HistOptions {
            lat: "lat".into(),
            lon: "lon".into(),
            binsize: 16.0,
            scale: Scale::Sqrt,
            cmap: ColorMap::new("hot").expect("hot is shipped").with_alpha(220),
            show_zero: false,
            tooltip: false,
        }
    }
}

/// Screen-space 2D histogram, recomputed for every view.
pub struct HistLayer {
    lats: Vec<f64>,
    lons: Vec<f64>,
    opts: HistOptions,
    grid: Option<Grid2D>,
    painter: BatchPainter,
}

impl HistLayer {
    pub fn new(table: &DataTable, opts: HistOptions) -> Result<Self> {
        // Validates the bin size up front.
        Grid2D::covering(Rect::new(0.0, 0.0, 1.0, 1.0), opts.binsize)?;
        let (lats, lons) = coords(table, &opts.lat, &opts.lon)?;
        Ok(HistLayer {
            lats,
            lons,
            opts,
            grid: None,
            painter: BatchPainter::new(),
        })
    }

    /// The counts computed by the last invalidate.
    pub fn grid(&self) -> Option<&Grid2D> {
        self.grid.as_ref()
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.painter
    }
}

fn paint_grid(painter: &mut BatchPainter, grid: &Grid2D, cmap: &ColorMap, scale: Scale, show_zero: bool) {
    painter.clear();
    let img = grid_image(grid, cmap, scale, show_zero);
    painter.texture(
        Arc::new(img),
        grid.origin_sx,
        grid.origin_sy,
        grid.width as f64 * grid.cell_px,
        grid.height as f64 * grid.cell_px,
    );
}

fn viewport(view: &ViewState) -> Rect {
    Rect::screen(view.screen_w, view.screen_h)
}

impl Layer for HistLayer {
    fn invalidate(&mut self, view: &ViewState) {
        let (sx, sy) = view.lonlat_to_screen_batch(&self.lons, &self.lats);
        let grid = bin2d(&sx, &sy, self.opts.binsize, viewport(view)).expect("bin size validated");
        paint_grid(&mut self.painter, &grid, &self.opts.cmap, self.opts.scale, self.opts.show_zero);
        self.grid = Some(grid);
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
        if !self.opts.tooltip {
            return;
        }
        if let (Some((mx, my)), Some(grid)) = (frame.mouse, &self.grid) {
            if let Some((ix, iy)) = grid.cell_of(mx, my) {
                let v = grid.get(ix, iy);
                if v > 0.0 {
                    frame.ui.tooltip(format!("{v}"), (mx, my));
                }
            }
        }
    }

    fn bbox(&self) -> Option<BoundingBox> {
        bbox_of(&self.lons, &self.lats)
    }
}

pub struct KdeOptions {
    pub lat: String,
    pub lon: String,
    pub params: KdeParams,
    pub cmap: ColorMap,
}

impl Default for KdeOptions {
    fn default() -> Self {
        KdeOptions {
            lat: "lat".into(),
            lon: "lon".into(),
            params: KdeParams::default(),
            cmap: ColorMap::new("hot").expect("hot is shipped").with_alpha(220),
        }
    }
}

/// Gaussian kernel density on a screen grid, drawn as one texture.
pub struct KdeLayer {
    lats: Vec<f64>,
    lons: Vec<f64>,
    opts: KdeOptions,
    grid: Option<Grid2D>,
    painter: BatchPainter,
}

impl KdeLayer {
    pub fn new(table: &DataTable, opts: KdeOptions) -> Result<Self> {
        opts.params.validate()?;
        let (lats, lons) = coords(table, &opts.lat, &opts.lon)?;
        Ok(KdeLayer {
            lats,
            lons,
            opts,
            grid: None,
            painter: BatchPainter::new(),
        })
    }

    pub fn grid(&self) -> Option<&Grid2D> {
        self.grid.as_ref()
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.painter
    }
}

impl Layer for KdeLayer {
    fn invalidate(&mut self, view: &ViewState) {
        let (sx, sy) = view.lonlat_to_screen_batch(&self.lons, &self.lats);
        let grid = kde_grid(&sx, &sy, &self.opts.params, viewport(view)).expect("parameters validated");
        // Cells zeroed by cut_below stay fully transparent.
        paint_grid(&mut self.painter, &grid, &self.opts.cmap, self.opts.params.scaling, false);
        self.grid = Some(grid);
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
    }

    fn bbox(&self) -> Option<BoundingBox> {
        bbox_of(&self.lons, &self.lats)
    }
}
