use super::{screen_len, Frame, Layer};
use crate::colormap::{ColorMap, Scale};
use crate::data::DataTable;
use crate::projection::{BoundingBox, ViewState};
use crate::render::BatchPainter;
use crate::Result;

/// Edge columns and styling for [`GraphLayer`].
#[derive(Debug, Clone)]
pub struct GraphSpec {
    pub src_lat: String,
    pub src_lon: String,
    pub dest_lat: String,
    pub dest_lon: String,
    pub cmap: String,
    pub alpha: u8,
    pub linewidth: f64,
}

impl Default for GraphSpec {
    fn default() -> Self {
        GraphSpec {
            src_lat: "lat_departure".into(),
            src_lon: "lon_departure".into(),
            dest_lat: "lat_arrival".into(),
            dest_lon: "lon_arrival".into(),
            cmap: "hot_r".into(),
            alpha: 16,
            linewidth: 2.0,
        }
    }
}

/// Straight edges between two coordinate pairs per row, colored by their
/// on-screen length: the shortest possible edge gets the first colormap
/// color and the longest edge in view the last.
pub struct GraphLayer {
    src: (Vec<f64>, Vec<f64>),
    dest: (Vec<f64>, Vec<f64>),
    cmap: ColorMap,
    spec: GraphSpec,
    painter: BatchPainter,
}

impl GraphLayer {
    pub fn new(table: &DataTable, spec: GraphSpec) -> Result<Self> {
        let (slat, slon) = table.coordinates(&spec.src_lat, &spec.src_lon)?;
        let (dlat, dlon) = table.coordinates(&spec.dest_lat, &spec.dest_lon)?;
        let cmap = ColorMap::new(&spec.cmap)?.with_alpha(spec.alpha);
        Ok(GraphLayer {
            src: (slon.to_vec(), slat.to_vec()),
            dest: (dlon.to_vec(), dlat.to_vec()),
            cmap,
            spec,
            painter: BatchPainter::new(),
        })
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.painter
    }
}

impl Layer for GraphLayer {
    fn invalidate(&mut self, view: &ViewState) {
        let (x0, y0) = view.lonlat_to_screen_batch(&self.src.0, &self.src.1);
        let (x1, y1) = view.lonlat_to_screen_batch(&self.dest.0, &self.dest.1);
        let lengths: Vec<f64> = (0..x0.len())
            .map(|i| screen_len(x0[i], y0[i], x1[i], y1[i]))
            .collect();
        let max = lengths.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
        self.painter.clear();
        for i in 0..x0.len() {
            if !lengths[i].is_finite() {
                continue;
            }
            let color = if max > 0.0 {
                self.cmap.to_color(lengths[i], max, Scale::Lin).expect("max is positive")
            } else {
                self.cmap.at(0.0)
            };
            self.painter.set_color(color);
            self.painter.line(x0[i], y0[i], x1[i], y1[i], self.spec.linewidth);
        }
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
    }

    fn bbox(&self) -> Option<BoundingBox> {
        let lons: Vec<f64> = self.src.0.iter().chain(&self.dest.0).copied().collect();
        let lats: Vec<f64> = self.src.1.iter().chain(&self.dest.1).copied().collect();
        super::bbox_of(&lons, &lats)
    }
}
