//! Scripts rendered by both the app tests and the acceptance target.

use std::path::Path;
use std::sync::Arc;

use terramap::layers::{ConvexHullOptions, DotColor, DotOptions, KdeOptions, MarkersOptions, VoronoiOptions};
use terramap::tiles::TileCache;
use terramap::{BoundingBox, DataTable, Engine};

use super::{data, offline_provider, seed_tiles};

/// Golden image of [`reference_scene`], relative to the fixtures directory.
pub const GOLDEN: &str = "golden/reference.png";

pub fn table(name: &str) -> DataTable {
    DataTable::read_csv(data(name)).unwrap()
}

/// An engine drawing from a cache pre-seeded for whatever view the script
/// resolves to.
pub fn offline_engine(cache_root: &Path) -> (Engine, Arc<TileCache>) {
    let cache = Arc::new(TileCache::new(cache_root));
    let mut engine = Engine::new();
    engine.tile_provider(Some(offline_provider()));
    engine.set_tile_cache(Arc::clone(&cache));
    (engine, cache)
}

pub fn seed_for(engine: &Engine, root: &Path) {
    seed_tiles(root, &offline_provider(), &engine.resolve_view());
}

/// `dot(data); show()` exported headlessly.
pub fn first_script(root: &Path, out: &Path) -> usize {
    let (mut engine, cache) = offline_engine(root);
    engine.set_size(800, 600);
    engine.dot(&table("bus.csv"), DotOptions::default()).unwrap();
    seed_for(&engine, root);
    engine.savefig(out).unwrap();
    cache.fetch_count()
}

/// Several layer kinds over synthetic tiles, at a fixed extent.
pub fn reference_scene(root: &Path) -> image::RgbaImage {
    let (mut engine, _) = offline_engine(root);
    engine.set_size(640, 480);
    engine.set_bbox(BoundingBox::new(55.76, 12.40, 55.60, 12.70).unwrap());
    let mut kde = KdeOptions::default();
    kde.params.bw = (5.0, 5.0);
    engine.kde(&table("towers.csv"), kde).unwrap();
    engine.voronoi(&table("stations.csv"), VoronoiOptions::default()).unwrap();
    engine.convexhull(&table("bus.csv"), ConvexHullOptions::default()).unwrap();
    engine
        .dot(&table("bus.csv"), DotOptions { color: DotColor::Fixed([0, 0, 160, 200]), point_size: 3.0, ..DotOptions::default() })
        .unwrap();
    engine.markers(&table("stations.csv"), data("m.png"), MarkersOptions::default()).unwrap();
    seed_for(&engine, root);
    engine.render().unwrap()
}

