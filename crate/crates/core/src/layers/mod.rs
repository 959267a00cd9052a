//! The layer lifecycle and the built-in visualizations.
//!
//! A layer rebuilds its geometry in [`Layer::invalidate`] whenever the view
//! changes and paints the prepared batches in [`Layer::draw`] every frame.

mod density;
mod graph;
mod points;
mod structure;
mod trail;
mod vector;

use image::RgbaImage;

use crate::colormap::{ColorMap, Scale};
use crate::data::{DataTable, Row};
use crate::geometry::Grid2D;
use crate::projection::{BoundingBox, ViewState};
use crate::render::Canvas;
use crate::viewer::{Key, UiManager};
use crate::Result;

pub use density::{HistLayer, HistOptions, KdeLayer, KdeOptions};
pub use graph::{GraphLayer, GraphSpec};
pub use points::{DotColor, DotLayer, DotOptions, MarkersLayer, MarkersOptions};
pub use structure::{
    ConvexHullLayer, ConvexHullOptions, DelaunayLayer, DelaunayOptions, VoronoiLayer,
    VoronoiOptions,
};
pub use trail::{TrailLayer, TrailOptions};
pub use vector::{
    FeatureColor, FeatureColorFn, FeatureTooltip, GeoJsonLayer, GeoJsonOptions, ShapefileLayer, ShapefileOptions,
};

/// Builds tooltip text for a table row.
pub type RowTooltip = Box<dyn Fn(&Row<'_>) -> String>;

/// Per-frame drawing context.
pub struct Frame<'a> {
    pub canvas: &'a mut Canvas,
    /// Cursor position in screen pixels, when inside the window.
    pub mouse: Option<(f64, f64)>,
    pub ui: &'a mut UiManager,
}

pub trait Layer {
    /// Rebuilds screen-space geometry for `view`. Called before the first
    /// draw and after every view change.
    fn invalidate(&mut self, view: &ViewState);

    /// Paints the layer; called every frame.
    fn draw(&mut self, view: &ViewState, frame: &mut Frame<'_>);

    /// Receives keys not claimed by the viewer.
    fn on_key_release(&mut self, _key: Key, _view: &ViewState) {}

    /// Geographic extent of the layer's data, used to fit the initial view.
    fn bbox(&self) -> Option<BoundingBox> {
        None
    }
}

/// Latitude and longitude columns of a table, checked and copied.
fn coords(table: &DataTable, lat: &str, lon: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let (lats, lons) = table.coordinates(lat, lon)?;
    Ok((lats.to_vec(), lons.to_vec()))
}

fn bbox_of(lons: &[f64], lats: &[f64]) -> Option<BoundingBox> {
    BoundingBox::from_points(lons, lats).ok()
}

/// Colormapped image of a grid, one pixel per cell. Zero cells are
/// transparent unless `show_zero`. Values are scaled against the grid max.
fn grid_image(grid: &Grid2D, cmap: &ColorMap, scale: Scale, show_zero: bool) -> RgbaImage {
    let max = grid.max();
    let mut img = RgbaImage::new(grid.width as u32, grid.height as u32);
    if max <= 0.0 || !max.is_finite() {
        if show_zero {
            for px in img.pixels_mut() {
                px.0 = cmap.at(0.0);
            }
        }
        return img;
    }
    for (px, &v) in img.pixels_mut().zip(&grid.values) {
        if v > 0.0 || show_zero {
            px.0 = cmap.to_color(v, max, scale).expect("max is positive and finite");
        }
    }
    img
}

fn screen_len(x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
}
