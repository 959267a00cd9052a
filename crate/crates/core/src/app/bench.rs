use std::fmt::Write;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};

use crate::data::DataTable;
use crate::layers::{
    DotLayer, DotOptions, Frame, GraphLayer, GraphSpec, HistLayer, HistOptions, KdeLayer,
    KdeOptions, Layer, VoronoiLayer, VoronoiOptions,
};
use crate::projection::{fit_view, BoundingBox};
use crate::render::Canvas;
use crate::viewer::UiManager;
use crate::{Error, Result};

/// Denmark, roughly: `(north, west, south, east)`.
pub const BENCH_BBOX: (f64, f64, f64, f64) = (57.8, 8.0, 54.5, 12.7);
pub const BENCH_SIZE: (u32, u32) = (1280, 768);

/// Mixture components as `(lat, lon, sigma_deg, weight)`.
const CLUSTERS: [(f64, f64, f64, f64); 5] = [
    (55.68, 12.57, 0.15, 0.35),
    (56.16, 10.20, 0.12, 0.20),
    (55.40, 10.39, 0.10, 0.15),
    (57.05, 9.92, 0.10, 0.15),
    (55.48, 8.45, 0.08, 0.15),
];

/// `n` points from a mixture of five Gaussians inside [`BENCH_BBOX`], as a
/// table with `lat` and `lon` columns.
pub fn synthetic_points(n: usize, seed: u64) -> DataTable {
    let (north, west, south, east) = BENCH_BBOX;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut lats = Vec::with_capacity(n);
    let mut lons = Vec::with_capacity(n);
    let total: f64 = CLUSTERS.iter().map(|c| c.3).sum();
    while lats.len() < n {
        let mut pick = rng.gen::<f64>() * total;
        let c = CLUSTERS
            .iter()
            .find(|c| {
                pick -= c.3;
                pick <= 0.0
            })
            .unwrap_or(&CLUSTERS[4]);
        let d = Normal::new(0.0, c.2).expect("positive sigma");
        let lat = c.0 + d.sample(&mut rng);
        let lon = c.1 + d.sample(&mut rng) * 1.7;
        if lat > south && lat < north && lon > west && lon < east {
            lats.push(lat);
            lons.push(lon);
        }
    }
    DataTable::from_columns([("lat", lats), ("lon", lons)]).expect("equal lengths")
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub name: String,
    /// Seconds per repetition.
    pub samples: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation; zero for a single repetition.
    pub sd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub samples: usize,
    pub reps: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, name: &str) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Execution time for {} samples, {} repetitions", self.samples, self.reps);
        let _ = writeln!(s, "{:<14}{:>12}{:>12}", "visualization", "mean (s)", "sd (s)");
        for r in &self.rows {
            let _ = writeln!(s, "{:<14}{:>12.3}{:>12.3}", r.name, r.mean, r.sd);
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("visualization,mean_s,sd_s\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{}", r.name, r.mean, r.sd);
        }
        s
    }
}

fn stats(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Times invalidate plus the first draw of each visualization on a blank
/// offscreen canvas. Layer construction and data generation are excluded.
pub fn bench(samples: usize, reps: usize) -> Result<BenchReport> {
    if samples == 0 || reps == 0 {
        return Err(Error::InvalidArgument("bench needs at least one sample and one repetition".into()));
    }
    let points = synthetic_points(samples, 1);
    let ends = synthetic_points(samples, 2);
    let (lats, lons) = points.latlon()?;
    let (dlats, dlons) = ends.latlon()?;
    let edges = DataTable::from_columns([
        ("lat_departure", lats.to_vec()),
        ("lon_departure", lons.to_vec()),
        ("lat_arrival", dlats.to_vec()),
        ("lon_arrival", dlons.to_vec()),
    ])?;

    let (n, w, s, e) = BENCH_BBOX;
    let view = fit_view(&BoundingBox::new(n, w, s, e)?, BENCH_SIZE.0, BENCH_SIZE.1);
    type Make<'a> = Box<dyn Fn() -> Result<Box<dyn Layer>> + 'a>;
    let makers: Vec<(&str, Make)> = vec![
        ("dot", Box::new(|| Ok(Box::new(DotLayer::new(&points, DotOptions::default())?) as Box<dyn Layer>))),
        ("graph", Box::new(|| Ok(Box::new(GraphLayer::new(&edges, GraphSpec::default())?) as Box<dyn Layer>))),
        (
            "hist",
            Box::new(|| {
                let opts = HistOptions {
                    binsize: 8.0,
                    ..HistOptions::default()
                };
                Ok(Box::new(HistLayer::new(&points, opts)?) as Box<dyn Layer>)
            }),
        ),
        ("kde", Box::new(|| Ok(Box::new(KdeLayer::new(&points, KdeOptions::default())?) as Box<dyn Layer>))),
        ("voronoi", Box::new(|| Ok(Box::new(VoronoiLayer::new(&points, VoronoiOptions::default())?) as Box<dyn Layer>))),
    ];

    let mut rows = Vec::new();
    for (name, make) in &makers {
        let mut times = Vec::with_capacity(reps);
        for _ in 0..reps {
            let mut layer = make()?;
            let mut canvas = Canvas::new(BENCH_SIZE.0, BENCH_SIZE.1);
            canvas.clear([255, 255, 255, 255]);
            let mut ui = UiManager::new();
            let t0 = Instant::now();
            layer.invalidate(&view);
            let mut frame = Frame {
                canvas: &mut canvas,
                mouse: None,
                ui: &mut ui,
            };
            layer.draw(&view, &mut frame);
            times.push(t0.elapsed().as_secs_f64());
        }
        let (mean, sd) = stats(&times);
        log::info!("{name}: mean {mean:.3}s sd {sd:.3}s");
        rows.push(BenchRow {
            name: name.to_string(),
            samples: times,
            mean,
            sd,
        });
    }
    Ok(BenchReport { samples, reps, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_rep_has_zero_sd() {
        let r = bench(500, 1).unwrap();
        let names: Vec<_> = r.rows.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["dot", "graph", "hist", "kde", "voronoi"]);
        assert!(r.rows.iter().all(|r| r.sd == 0.0 && r.samples.len() == 1));
        assert!(r.to_table().contains("voronoi"));
        assert_eq!(r.to_csv().lines().count(), 6);
    }

    #[test]
    fn synthetic_points_in_box() {
        let t = synthetic_points(2000, 7);
        let (lats, lons) = t.latlon().unwrap();
        assert_eq!(lats.len(), 2000);
        assert!(lats.iter().all(|&v| v > 54.5 && v < 57.8));
        assert!(lons.iter().all(|&v| v > 8.0 && v < 12.7));
    }
}
