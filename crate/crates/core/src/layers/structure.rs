use super::{bbox_of, coords, screen_len, Frame, Layer};
use crate::colormap::{ColorMap, Rgba, Scale};
use crate::data::DataTable;
use crate::geometry::{
    convex_hull, delaunay, polygon_area, voronoi, Point, Rect, Triangulation, VoronoiDiagram,
};
use crate::projection::{BoundingBox, ViewState};
use crate::render::BatchPainter;
use crate::Result;

fn screen_points(view: &ViewState, lons: &[f64], lats: &[f64]) -> Vec<Point> {
    let (sx, sy) = view.lonlat_to_screen_batch(lons, lats);
    sx.into_iter().zip(sy).map(|(x, y)| [x, y]).collect()
}

pub struct VoronoiOptions {
    pub lat: String,
    pub lon: String,
    /// Cell outline color; `None` draws no outlines.
    pub line_color: Option<Rgba>,
    pub line_width: f64,
    /// Fill cells, shaded by area so that smaller cells get hotter colors.
    pub fill: bool,
    pub cmap: ColorMap,
    pub scale: Scale,
}

impl Default for VoronoiOptions {
    fn default() -> Self {
        VoronoiOptions {
            lat: "lat".into(),
            lon: "lon".into(),
            line_color: Some([0, 0, 255, 255]),
            line_width: 1.0,
            fill: false,
            cmap: ColorMap::new("hot").expect("hot is shipped").with_alpha(150),
            scale: Scale::Sqrt,
        }
    }
}

/// Voronoi cells of the projected points, clipped to the screen.
pub struct VoronoiLayer {
    lats: Vec<f64>,
    lons: Vec<f64>,
    opts: VoronoiOptions,
    diagram: Option<VoronoiDiagram>,
    painter: BatchPainter,
}

impl VoronoiLayer {
    pub fn new(table: &DataTable, opts: VoronoiOptions) -> Result<Self> {
        let (lats, lons) = coords(table, &opts.lat, &opts.lon)?;
        Ok(VoronoiLayer {
            lats,
            lons,
            opts,
            diagram: None,
            painter: BatchPainter::new(),
        })
    }

    pub fn diagram(&self) -> Option<&VoronoiDiagram> {
        self.diagram.as_ref()
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.painter
    }
}

impl Layer for VoronoiLayer {
    fn invalidate(&mut self, view: &ViewState) {
        self.painter.clear();
        let seeds = screen_points(view, &self.lons, &self.lats);
        let diagram = match voronoi(&seeds, Rect::screen(view.screen_w, view.screen_h)) {
            Ok(d) => d,
            Err(e) => {
                log::warn!("voronoi layer: {e}");
                self.diagram = None;
                return;
            }
        };
        if self.opts.fill {
            let density: Vec<f64> = diagram
                .cells
                .iter()
                .map(|c| {
                    let a = polygon_area(c).abs();
                    if a > 0.0 { 1.0 / a } else { 0.0 }
                })
                .collect();
            let max = density.iter().copied().fold(0.0, f64::max);
            for (cell, &d) in diagram.cells.iter().zip(&density) {
                if d <= 0.0 {
                    continue;
                }
                let color = self.opts.cmap.to_color(d, max, self.opts.scale).expect("max is positive");
                self.painter.set_color(color);
                self.painter.poly_fill(cell);
            }
        }
        if let Some(c) = self.opts.line_color {
            self.painter.set_color(c);
            for cell in &diagram.cells {
                self.painter.poly_outline(cell, self.opts.line_width);
            }
        }
        self.diagram = Some(diagram);
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
    }

    fn bbox(&self) -> Option<BoundingBox> {
        bbox_of(&self.lons, &self.lats)
    }
}

pub struct DelaunayOptions {
    pub lat: String,
    pub lon: String,
    /// Colors edges by on-screen length; `None` uses `color`.
    pub cmap: Option<ColorMap>,
    pub color: Rgba,
    pub line_width: f64,
}

impl Default for DelaunayOptions {
    fn default() -> Self {
        DelaunayOptions {
            lat: "lat".into(),
            lon: "lon".into(),
            cmap: Some(ColorMap::new("hot_r").expect("hot_r is shipped")),
            color: [0, 0, 255, 255],
            line_width: 1.0,
        }
    }
}

/// Delaunay edges of the projected points, each drawn once.
pub struct DelaunayLayer {
    lats: Vec<f64>,
    lons: Vec<f64>,
    opts: DelaunayOptions,
    triangulation: Option<Triangulation>,
    painter: BatchPainter,
}

impl DelaunayLayer {
    pub fn new(table: &DataTable, opts: DelaunayOptions) -> Result<Self> {
        let (lats, lons) = coords(table, &opts.lat, &opts.lon)?;
        Ok(DelaunayLayer {
            lats,
            lons,
            opts,
            triangulation: None,
            painter: BatchPainter::new(),
        })
    }

    pub fn triangulation(&self) -> Option<&Triangulation> {
        self.triangulation.as_ref()
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.painter
    }
}

impl Layer for DelaunayLayer {
    fn invalidate(&mut self, view: &ViewState) {
        self.painter.clear();
        let pts = screen_points(view, &self.lons, &self.lats);
        let tri = match delaunay(&pts) {
            Ok(t) => t,
            Err(e) => {
                log::warn!("delaunay layer: {e}");
                self.triangulation = None;
                return;
            }
        };
        let edges = tri.edges();
        let lengths: Vec<f64> = edges
            .iter()
            .map(|&(a, b)| screen_len(pts[a][0], pts[a][1], pts[b][0], pts[b][1]))
            .collect();
        let max = lengths.iter().copied().fold(0.0, f64::max);
        for (&(a, b), &len) in edges.iter().zip(&lengths) {
            let color = match &self.opts.cmap {
                Some(cmap) if max > 0.0 => cmap.to_color(len, max, Scale::Lin).expect("max is positive"),
                Some(cmap) => cmap.at(0.0),
                None => self.opts.color,
            };
            self.painter.set_color(color);
            self.painter
                .line(pts[a][0], pts[a][1], pts[b][0], pts[b][1], self.opts.line_width);
        }
        self.triangulation = Some(tri);
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
    }

    fn bbox(&self) -> Option<BoundingBox> {
        bbox_of(&self.lons, &self.lats)
    }
}

pub struct ConvexHullOptions {
    pub lat: String,
    pub lon: String,
    pub color: Rgba,
    pub fill: bool,
    /// Alpha of the fill; the outline uses `color` as given.
    pub fill_alpha: u8,
    pub line_width: f64,
}

impl Default for ConvexHullOptions {
    fn default() -> Self {
        ConvexHullOptions {
            lat: "lat".into(),
            lon: "lon".into(),
            color: [0, 0, 255, 255],
            fill: true,
            fill_alpha: 100,
            line_width: 2.0,
        }
    }
}

/// Convex hull of the projected points.
pub struct ConvexHullLayer {
    lats: Vec<f64>,
    lons: Vec<f64>,
    opts: ConvexHullOptions,
    hull: Vec<Point>,
    painter: BatchPainter,
}

impl ConvexHullLayer {
    pub fn new(table: &DataTable, opts: ConvexHullOptions) -> Result<Self> {
        let (lats, lons) = coords(table, &opts.lat, &opts.lon)?;
        Ok(ConvexHullLayer {
            lats,
            lons,
            opts,
            hull: Vec::new(),
            painter: BatchPainter::new(),
        })
    }

    /// Hull vertices in screen pixels from the last invalidate.
    pub fn hull(&self) -> &[Point] {
        &self.hull
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.painter
    }
}

impl Layer for ConvexHullLayer {
    fn invalidate(&mut self, view: &ViewState) {
        self.painter.clear();
        let pts = screen_points(view, &self.lons, &self.lats);
        self.hull = match convex_hull(&pts) {
            Ok(idx) => idx.into_iter().map(|i| pts[i]).collect(),
            Err(e) => {
                log::warn!("convex hull layer: {e}");
                Vec::new()
            }
        };
        if self.hull.is_empty() {
            return;
        }
        if self.opts.fill {
            let [r, g, b, _] = self.opts.color;
            self.painter.set_color([r, g, b, self.opts.fill_alpha]);
            self.painter.poly_fill(&self.hull);
        }
        self.painter.set_color(self.opts.color);
        self.painter.poly_outline(&self.hull, self.opts.line_width);
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
    }

    fn bbox(&self) -> Option<BoundingBox> {
        bbox_of(&self.lons, &self.lats)
    }
}
