//! Script-style facade: add layers, then show them in a window or save a
//! PNG. Also hosts the benchmark harness and the command-line interface.

mod bench;
pub mod cli;

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use image::RgbaImage;

use crate::data::DataTable;
use crate::layers::{
    ConvexHullLayer, ConvexHullOptions, DelaunayLayer, DelaunayOptions, DotLayer, DotOptions,
    GeoJsonLayer, GeoJsonOptions, GraphLayer, GraphSpec, HistLayer, HistOptions, KdeLayer,
    KdeOptions, Layer, MarkersLayer, MarkersOptions, ShapefileLayer, ShapefileOptions,
    VoronoiLayer, VoronoiOptions,
};
use crate::projection::{fit_view, BoundingBox, ViewState};
use crate::tiles::{default_cache_dir, TileCache, TileProvider, PROVIDER_ENV};
use crate::viewer::{Basemap, Viewer};
use crate::Result;

pub use bench::{bench, synthetic_points, BenchReport, BenchRow, BENCH_BBOX, BENCH_SIZE};

pub const DEFAULT_SIZE: (u32, u32) = (1280, 768);

/// The tile provider named by `$TERRAMAP_TILES`, else OpenStreetMap. The
/// value `none` disables tiles.
pub fn provider_from_env() -> Result<Option<TileProvider>> {
    match std::env::var(PROVIDER_ENV) {
        Ok(v) if v == "none" => Ok(None),
        Ok(v) if !v.is_empty() => TileProvider::parse(&v).map(Some),
        _ => Ok(Some(TileProvider::openstreetmap())),
    }
}

/// Collects layers in call order and renders them over base-map tiles.
///
/// Unless [`set_bbox`](Engine::set_bbox) was called, the view is fitted to
/// the union of all layers' data. [`show`](Engine::show) and
/// [`savefig`](Engine::savefig) consume the accumulated layers and bounding
/// box, so the next script starts from an empty map.
pub struct Engine {
    layers: Vec<Box<dyn Layer>>,
    bbox: Option<BoundingBox>,
    size: (u32, u32),
    provider: Option<TileProvider>,
    cache_dir: Option<PathBuf>,
    cache: Option<Arc<TileCache>>,
    tile_timeout: Duration,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    /// An engine using the provider from the environment (or OpenStreetMap
    /// when the variable is unset or invalid).
    pub fn new() -> Self {
        let provider = provider_from_env().unwrap_or_else(|e| {
            log::warn!("{e}; using openstreetmap");
            Some(TileProvider::openstreetmap())
        });
        Engine {
            layers: Vec::new(),
            bbox: None,
            size: DEFAULT_SIZE,
            provider,
            cache_dir: None,
            cache: None,
            tile_timeout: Duration::from_secs(30),
        }
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn add_layer(&mut self, layer: Box<dyn Layer>) {
        self.layers.push(layer);
    }

    pub fn dot(&mut self, table: &DataTable, opts: DotOptions) -> Result<()> {
        self.push(DotLayer::new(table, opts)?)
    }

    pub fn hist(&mut self, table: &DataTable, opts: HistOptions) -> Result<()> {
        self.push(HistLayer::new(table, opts)?)
    }

    pub fn kde(&mut self, table: &DataTable, opts: KdeOptions) -> Result<()> {
        self.push(KdeLayer::new(table, opts)?)
    }

    pub fn markers(&mut self, table: &DataTable, image: impl AsRef<Path>, opts: MarkersOptions) -> Result<()> {
        self.push(MarkersLayer::new(table, image, opts)?)
    }

    pub fn graph(&mut self, table: &DataTable, spec: GraphSpec) -> Result<()> {
        self.push(GraphLayer::new(table, spec)?)
    }

    pub fn voronoi(&mut self, table: &DataTable, opts: VoronoiOptions) -> Result<()> {
        self.push(VoronoiLayer::new(table, opts)?)
    }

    pub fn delaunay(&mut self, table: &DataTable, opts: DelaunayOptions) -> Result<()> {
        self.push(DelaunayLayer::new(table, opts)?)
    }

    pub fn convexhull(&mut self, table: &DataTable, opts: ConvexHullOptions) -> Result<()> {
        self.push(ConvexHullLayer::new(table, opts)?)
    }

    pub fn shapefiles(&mut self, base: impl AsRef<Path>, opts: ShapefileOptions) -> Result<()> {
        self.push(ShapefileLayer::new(base, opts)?)
    }

    pub fn geojson(&mut self, path: impl AsRef<Path>, opts: GeoJsonOptions) -> Result<()> {
        self.push(GeoJsonLayer::new(path, opts)?)
    }

    fn push(&mut self, layer: impl Layer + 'static) -> Result<()> {
        self.layers.push(Box::new(layer));
        Ok(())
    }

    pub fn set_bbox(&mut self, bbox: BoundingBox) {
        self.bbox = Some(bbox);
    }

    pub fn set_size(&mut self, width: u32, height: u32) {
        self.size = (width.max(1), height.max(1));
    }

    /// `None` renders on a blank background.
    pub fn tile_provider(&mut self, provider: Option<TileProvider>) {
        self.provider = provider;
    }

    pub fn set_tile_cache_dir(&mut self, dir: impl Into<PathBuf>) {
        self.cache_dir = Some(dir.into());
        self.cache = None;
    }

    /// Shares an existing cache, for example one pre-seeded on disk.
    pub fn set_tile_cache(&mut self, cache: Arc<TileCache>) {
        self.cache_dir = Some(cache.root().to_path_buf());
        self.cache = Some(cache);
    }

    /// How long [`savefig`](Engine::savefig) waits for tile downloads.
    pub fn set_tile_timeout(&mut self, timeout: Duration) {
        self.tile_timeout = timeout;
    }

    fn tile_cache(&mut self) -> Arc<TileCache> {
        if self.cache.is_none() {
            let dir = self.cache_dir.clone().unwrap_or_else(default_cache_dir);
            self.cache = Some(Arc::new(TileCache::new(dir)));
        }
        Arc::clone(self.cache.as_ref().unwrap())
    }

    /// The view `show`/`savefig` would use right now.
    pub fn resolve_view(&self) -> ViewState {
        let bbox = self.bbox.or_else(|| {
            self.layers
                .iter()
                .filter_map(|l| l.bbox())
                .reduce(|a, b| a.union(&b))
        });
        let bbox = bbox.unwrap_or_else(BoundingBox::world);
        fit_view(&bbox, self.size.0, self.size.1)
    }

    fn take_viewer(&mut self) -> Viewer {
        let view = self.resolve_view();
        let basemap = self.provider.clone().map(|provider| Basemap {
            provider,
            cache: self.tile_cache(),
        });
        let layers = std::mem::take(&mut self.layers);
        self.bbox = None;
        Viewer::new(view, layers, basemap)
    }

    /// Renders one frame offscreen, waiting for tiles first.
    pub fn render(&mut self) -> Result<RgbaImage> {
        let mut viewer = self.take_viewer();
        if !viewer.prefetch_tiles(self.tile_timeout) {
            log::warn!("some tiles did not arrive in time");
        }
        viewer.frame()?;
        Ok(viewer.canvas().read_pixels())
    }

    pub fn savefig(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let img = self.render()?;
        crate::render::write_png(&img, path)
    }

    /// Opens the interactive window and blocks until it is closed.
    pub fn show(&mut self) -> Result<()> {
        let mut viewer = self.take_viewer();
        viewer.run("terramap")
    }
}
