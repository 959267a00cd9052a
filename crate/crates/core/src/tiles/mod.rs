//! Base-map tiles: providers, tile addressing and the on-disk/in-memory cache.

mod cache;

use std::fmt;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::projection::{ViewState, TILE_SIZE};
use crate::{Error, Result};

pub use cache::{default_cache_dir, FetchPolicy, TileCache, TileHandle};

/// Environment variable overriding the tile cache root.
pub const CACHE_ENV: &str = "TERRAMAP_TILE_CACHE";
/// Environment variable selecting the tile provider (preset name or template).
pub const PROVIDER_ENV: &str = "TERRAMAP_TILES";

/// A slippy tile server.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct TileProvider {
    /// Cache namespace.
    pub name: String,
    #[serde(rename = "url")]
    pub url_template: String,
    pub attribution: String,
}

#[derive(Deserialize)]
struct PresetFile {
    provider: Vec<TileProvider>,
}

fn presets() -> &'static [TileProvider] {
    static PRESETS: OnceLock<Vec<TileProvider>> = OnceLock::new();
    PRESETS.get_or_init(|| {
        let file: PresetFile =
            toml::from_str(include_str!("providers.toml")).expect("bundled providers.toml is valid");
        for p in &file.provider {
            validate_template(&p.url_template).expect("bundled provider template is valid");
        }
        file.provider
    })
}

fn validate_template(template: &str) -> Result<()> {
    let ok = ["{z}", "{x}", "{y}"]
        .iter()
        .all(|ph| template.matches(ph).count() == 1);
    if ok {
        Ok(())
    } else {
        Err(Error::TileTemplate(template.to_owned()))
    }
}

impl TileProvider {
    pub fn new(
        name: impl Into<String>,
        url_template: impl Into<String>,
        attribution: impl Into<String>,
    ) -> Result<Self> {
        let url_template = url_template.into();
        validate_template(&url_template)?;
        let name = name.into();
        if name.is_empty() || name.contains(['/', '\\']) || name == "." || name == ".." {
            return Err(Error::InvalidArgument(format!(
                "provider name '{name}' is not a valid cache directory name"
            )));
        }
        Ok(TileProvider {
            name,
            url_template,
            attribution: attribution.into(),
        })
    }

    /// A provider for an arbitrary template, namespaced by a hash of the
    /// template.
    pub fn from_template(url_template: &str) -> Result<Self> {
        validate_template(url_template)?;
        // FNV-1a keeps the namespace stable across runs and platforms.
        let hash = url_template
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
                (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
            });
        TileProvider::new(format!("custom-{hash:016x}"), url_template, "")
    }

    pub fn preset(name: &str) -> Option<TileProvider> {
        presets().iter().find(|p| p.name == name).cloned()
    }

    pub fn preset_names() -> impl Iterator<Item = &'static str> {
        presets().iter().map(|p| p.name.as_str())
    }

    pub fn openstreetmap() -> TileProvider {
        Self::preset("openstreetmap").expect("openstreetmap preset")
    }

    /// A preset name or a URL template.
    pub fn parse(spec: &str) -> Result<TileProvider> {
        match Self::preset(spec) {
            Some(p) => Ok(p),
            None => Self::from_template(spec),
        }
    }

    pub fn tile_url(&self, coord: TileCoord) -> String {
        self.url_template
            .replace("{z}", &coord.z.to_string())
            .replace("{x}", &coord.x.to_string())
            .replace("{y}", &coord.y.to_string())
    }
}

/// A tile address in the quadtree pyramid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileCoord {
    pub z: u8,
    pub x: u32,
    pub y: u32,
}

impl TileCoord {
    pub fn new(z: u8, x: u32, y: u32) -> Result<Self> {
        if z > 20 {
            return Err(Error::InvalidArgument(format!("tile zoom {z} > 20")));
        }
        let n = 1u32 << z;
        if x >= n || y >= n {
            return Err(Error::InvalidArgument(format!(
                "tile ({x}, {y}) outside the {n}x{n} grid at zoom {z}"
            )));
        }
        Ok(TileCoord { z, x, y })
    }

    /// The tile containing world pixel `(wx, wy)`, clamped to the grid.
    pub fn containing(z: u8, wx: f64, wy: f64) -> TileCoord {
        let max = ((1u64 << z) - 1) as f64;
        TileCoord {
            z,
            x: (wx / TILE_SIZE).floor().clamp(0.0, max) as u32,
            y: (wy / TILE_SIZE).floor().clamp(0.0, max) as u32,
        }
    }

    /// World pixel of the tile's top-left corner.
    pub fn world_origin(&self) -> (f64, f64) {
        (self.x as f64 * TILE_SIZE, self.y as f64 * TILE_SIZE)
    }
}

impl fmt::Display for TileCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.z, self.x, self.y)
    }
}

pub fn tile_url(provider: &TileProvider, coord: TileCoord) -> String {
    provider.tile_url(coord)
}

/// Tiles covering the viewport plus a one-tile margin ring, clipped to the
/// grid, in row-major order.
pub fn tiles_for_view(view: &ViewState) -> Vec<TileCoord> {
    let z = view.zoom;
    let n = 1i64 << z;
    let x_first = (view.origin_wx / TILE_SIZE).floor() as i64 - 1;
    let x_last = ((view.origin_wx + view.screen_w as f64) / TILE_SIZE).ceil() as i64;
    let y_first = (view.origin_wy / TILE_SIZE).floor() as i64 - 1;
    let y_last = ((view.origin_wy + view.screen_h as f64) / TILE_SIZE).ceil() as i64;
    let mut out = Vec::new();
    for y in y_first.max(0)..=y_last.min(n - 1) {
        for x in x_first.max(0)..=x_last.min(n - 1) {
            out.push(TileCoord {
                z,
                x: x as u32,
                y: y as u32,
            });
        }
    }
    out
}
