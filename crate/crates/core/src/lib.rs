//! Layered map rendering over slippy tiles.
//!
//! A map is a stack of [`layers::Layer`]s drawn over Web Mercator base-map
//! tiles. Layers project their data through a [`projection::ViewState`] in
//! `invalidate` and paint pre-built batches through a
//! [`render::BatchPainter`] on every `draw`. The [`app::Engine`] facade
//! collects layers, fits the view to the data and either opens the
//! interactive viewer or exports a PNG.

pub mod app;
pub mod colormap;
pub mod data;
mod error;
pub mod formats;
pub mod geometry;
pub mod layers;
pub mod projection;
pub mod render;
pub mod tiles;
pub mod viewer;

pub use app::Engine;
pub use colormap::{ColorMap, Rgba, Scale};
pub use data::DataTable;
pub use error::{Error, Result};
pub use projection::{BoundingBox, ViewState};
