//! `terramap` command line: one subcommand per visualization plus `bench`.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use super::{bench, provider_from_env, Engine};
use crate::colormap::ColorMap;
use crate::data::DataTable;
use crate::layers::{
    ConvexHullOptions, DelaunayOptions, DotOptions, GeoJsonOptions, GraphSpec, HistOptions,
    KdeOptions, ShapefileOptions, VoronoiOptions,
};
use crate::projection::BoundingBox;
use crate::tiles::TileProvider;
use crate::{Error, Result};

/// Exit status for bad input: unreadable files, unknown columns, bad flags.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for other failures, such as no window system.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "terramap", version, about = "Render geographic data over slippy-map tiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One dot per row.
    Dot(MapArgs),
    /// Counts in square screen-space bins.
    Hist(MapArgs),
    /// Kernel density heatmap.
    Kde(MapArgs),
    /// Straight edges between two coordinate pairs per row.
    Graph(GraphArgs),
    Voronoi(MapArgs),
    Delaunay(MapArgs),
    Convexhull(MapArgs),
    /// INPUT is the path with or without the .shp suffix.
    Shapefile(MapArgs),
    Geojson(GeoJsonArgs),
    /// Time each visualization on synthetic data.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct MapArgs {
    /// Data file (CSV for point visualizations).
    pub input: PathBuf,
    /// Write a PNG instead of opening a window.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Map extent as N,W,S,E degrees; defaults to fitting the data.
    #[arg(long, value_parser = parse_bbox, allow_hyphen_values = true)]
    pub bbox: Option<BoundingBox>,
    /// Colormap name; append `_r` to reverse.
    #[arg(long)]
    pub cmap: Option<String>,
    /// KDE bandwidth in screen pixels.
    #[arg(long, value_parser = parse_pair)]
    pub bw: Option<(f64, f64)>,
    /// Histogram bin size in screen pixels.
    #[arg(long)]
    pub binsize: Option<f64>,
    /// Tile preset name, URL template with {z}/{x}/{y}, or `none`.
    #[arg(long)]
    pub tiles: Option<String>,
    /// Tile cache directory.
    #[arg(long)]
    pub tile_cache: Option<PathBuf>,
    /// Output size as WxH pixels.
    #[arg(long, value_parser = parse_size)]
    pub size: Option<(u32, u32)>,
    #[arg(long, default_value = "lat")]
    pub lat: String,
    #[arg(long, default_value = "lon")]
    pub lon: String,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value = "lat_departure")]
    pub src_lat: String,
    #[arg(long, default_value = "lon_departure")]
    pub src_lon: String,
    #[arg(long, default_value = "lat_arrival")]
    pub dest_lat: String,
    #[arg(long, default_value = "lon_arrival")]
    pub dest_lon: String,
    #[arg(long, default_value_t = 16)]
    pub alpha: u8,
    #[arg(long, default_value_t = 2.0)]
    pub linewidth: f64,
}

#[derive(Args, Debug)]
pub struct GeoJsonArgs {
    #[command(flatten)]
    pub map: MapArgs,
    /// Fill polygons instead of outlining them.
    #[arg(long)]
    pub fill: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    /// Also write the results as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn floats(s: &str, n: usize, what: &str) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| f64::from_str(p.trim()).map_err(|e| format!("{what}: '{p}': {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if parts.len() != n {
        return Err(format!("{what}: expected {n} comma-separated numbers, got {}", parts.len()));
    }
    Ok(parts)
}

pub fn parse_bbox(s: &str) -> std::result::Result<BoundingBox, String> {
    let v = floats(s, 4, "bbox")?;
    BoundingBox::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

pub fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let v = floats(s, 2, "pair")?;
    if v.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(format!("'{s}': values must be positive"));
    }
    Ok((v[0], v[1]))
}

pub fn parse_size(s: &str) -> std::result::Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("size '{s}': expected WxH"))?;
    let w: u32 = w.trim().parse().map_err(|e| format!("size '{s}': {e}"))?;
    let h: u32 = h.trim().parse().map_err(|e| format!("size '{s}': {e}"))?;
    if w == 0 || h == 0 {
        return Err(format!("size '{s}': dimensions must be positive"));
    }
    Ok((w, h))
}

fn configure(engine: &mut Engine, args: &MapArgs) -> Result<()> {
    let provider = match args.tiles.as_deref() {
        Some("none") => None,
        Some(spec) => Some(TileProvider::parse(spec)?),
        None => provider_from_env()?,
    };
    engine.tile_provider(provider);
    if let Some(dir) = &args.tile_cache {
        engine.set_tile_cache_dir(dir);
    }
    if let Some((w, h)) = args.size {
        engine.set_size(w, h);
    }
    if let Some(b) = args.bbox {
        engine.set_bbox(b);
    }
    Ok(())
}

fn cmap_or(args: &MapArgs, default: &str, alpha: u8) -> Result<ColorMap> {
    Ok(ColorMap::new(args.cmap.as_deref().unwrap_or(default))?.with_alpha(alpha))
}

fn finish(engine: &mut Engine, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            engine.savefig(path)?;
            log::info!("wrote {}", path.display());
            Ok(())
        }
        None => engine.show(),
    }
}

/// Runs one parsed command.
pub fn execute(cli: Cli) -> Result<()> {
    let mut engine = Engine::new();
    match cli.command {
        Command::Bench(b) => {
            let report = bench(b.samples, b.reps)?;
            print!("{}", report.to_table());
            if let Some(path) = b.csv {
                std::fs::write(&path, report.to_csv()).map_err(|e| Error::io(&path, e))?;
            }
            Ok(())
        }
        Command::Shapefile(a) => {
            configure(&mut engine, &a)?;
            engine.shapefiles(&a.input, ShapefileOptions::default())?;
            finish(&mut engine, &a.out)
        }
        Command::Geojson(g) => {
            let a = &g.map;
            configure(&mut engine, a)?;
            engine.geojson(
                &a.input,
                GeoJsonOptions {
                    fill: g.fill,
                    ..GeoJsonOptions::default()
                },
            )?;
            finish(&mut engine, &a.out)
        }
        Command::Graph(g) => {
            let a = &g.map;
            configure(&mut engine, a)?;
            let table = DataTable::read_csv(&a.input)?;
            let spec = GraphSpec {
                src_lat: g.src_lat.clone(),
                src_lon: g.src_lon.clone(),
                dest_lat: g.dest_lat.clone(),
                dest_lon: g.dest_lon.clone(),
                cmap: a.cmap.clone().unwrap_or_else(|| GraphSpec::default().cmap),
                alpha: g.alpha,
                linewidth: g.linewidth,
            };
            engine.graph(&table, spec)?;
            finish(&mut engine, &a.out)
        }
        Command::Dot(ref a)
        | Command::Hist(ref a)
        | Command::Kde(ref a)
        | Command::Voronoi(ref a)
        | Command::Delaunay(ref a)
        | Command::Convexhull(ref a) => {
            configure(&mut engine, a)?;
            let table = DataTable::read_csv(&a.input)?;
            let (lat, lon) = (a.lat.clone(), a.lon.clone());
            match &cli.command {
                Command::Dot(_) => engine.dot(&table, DotOptions { lat, lon, ..DotOptions::default() })?,
                Command::Hist(_) => {
                    let d = HistOptions::default();
                    engine.hist(
                        &table,
                        HistOptions {
                            lat,
                            lon,
                            binsize: a.binsize.unwrap_or(d.binsize),
                            cmap: cmap_or(a, "hot", 220)?,
                            ..d
                        },
                    )?
                }
                Command::Kde(_) => {
                    let mut opts = KdeOptions {
                        lat,
                        lon,
                        cmap: cmap_or(a, "hot", 220)?,
                        ..KdeOptions::default()
                    };
                    if let Some(bw) = a.bw {
                        opts.params.bw = bw;
                    }
                    engine.kde(&table, opts)?
                }
                Command::Voronoi(_) => engine.voronoi(
                    &table,
                    VoronoiOptions {
                        lat,
                        lon,
                        fill: a.cmap.is_some(),
                        cmap: cmap_or(a, "hot", 150)?,
                        ..VoronoiOptions::default()
                    },
                )?,
                Command::Delaunay(_) => engine.delaunay(
                    &table,
                    DelaunayOptions {
                        lat,
                        lon,
                        cmap: Some(cmap_or(a, "hot_r", 255)?),
                        ..DelaunayOptions::default()
                    },
                )?,
                _ => engine.convexhull(&table, ConvexHullOptions { lat, lon, ..ConvexHullOptions::default() })?,
            }
            finish(&mut engine, &a.out)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_FAILURE
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags() {
        assert_eq!(parse_size("800x600"), Ok((800, 600)));
        assert!(parse_size("800").is_err());
        assert!(parse_size("0x5").is_err());
        assert_eq!(parse_pair("5,5"), Ok((5.0, 5.0)));
        assert!(parse_pair("5,-1").is_err());
        let b = parse_bbox("57.8,8,54.5,12.7").unwrap();
        assert_eq!(b, BoundingBox::new(57.8, 8.0, 54.5, 12.7).unwrap());
        assert!(parse_bbox("1,2,3").is_err());
    }

    #[test]
    fn negative_bbox_values_parse() {
        let cli = Cli::try_parse_from(["terramap", "dot", "x.csv", "--bbox", "10,-20,-10,20"]).unwrap();
        let Command::Dot(a) = cli.command else { panic!() };
        assert_eq!(a.bbox.unwrap(), BoundingBox::new(10.0, -20.0, -10.0, 20.0).unwrap());
    }

    #[test]
    fn missing_file_is_input_error() {
        assert_eq!(run(["terramap", "dot", "/nonexistent/x.csv", "--out", "/tmp/x.png"]), EXIT_INPUT);
        assert_eq!(run(["terramap", "dot"]), EXIT_INPUT);
    }
}
