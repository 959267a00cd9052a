use std::path::Path;

use serde_json::{Map, Value};

use super::{Frame, Layer};
use crate::colormap::Rgba;
use crate::formats::{read_geojson, read_shapefile, Geometry, VectorFeature};
use crate::geometry::{polygon_area, Point, Rect};
use crate::projection::{BoundingBox, ViewState};
use crate::render::BatchPainter;
use crate::viewer::HotspotIndex;
use crate::Result;

/// Tooltip text from a feature's attributes.
pub type FeatureTooltip = Box<dyn Fn(&Map<String, Value>) -> String>;

/// Computes a feature's color from its attributes.
pub type FeatureColorFn = Box<dyn Fn(&Map<String, Value>) -> Rgba>;

/// Per-feature color. A color with alpha 0 hides the feature.
pub enum FeatureColor {
    Fixed(Rgba),
    ByAttributes(FeatureColorFn),
}

impl FeatureColor {
    fn resolve(&self, attrs: &Map<String, Value>) -> Rgba {
        match self {
            FeatureColor::Fixed(c) => *c,
            FeatureColor::ByAttributes(f) => f(attrs),
        }
    }
}

const POINT_SIZE: f64 = 4.0;

/// Shared drawing for vector features: outlines, or fills of outer rings
/// (holes are not cut out).
struct FeatureLayer {
    features: Vec<VectorFeature>,
    colors: Vec<Rgba>,
    fill: bool,
    line_width: f64,
    tooltip: Option<FeatureTooltip>,
    painter: BatchPainter,
    hotspots: HotspotIndex<usize>,
}

impl FeatureLayer {
    fn new(
        features: Vec<VectorFeature>,
        color: &FeatureColor,
        fill: bool,
        line_width: f64,
        tooltip: Option<FeatureTooltip>,
    ) -> Self {
        let colors = features.iter().map(|f| color.resolve(&f.attributes)).collect();
        FeatureLayer {
            features,
            colors,
            fill,
            line_width,
            tooltip,
            painter: BatchPainter::new(),
            hotspots: HotspotIndex::new(),
        }
    }

    fn project(view: &ViewState, ring: &[[f64; 2]]) -> Vec<Point> {
        ring.iter()
            .map(|p| {
                let (x, y) = view.lonlat_to_screen(p[0], p[1]);
                [x, y]
            })
            .collect()
    }

    fn polyline(&mut self, pts: &[Point]) {
        for w in pts.windows(2) {
            self.painter.line(w[0][0], w[0][1], w[1][0], w[1][1], self.line_width);
        }
    }

    fn invalidate(&mut self, view: &ViewState) {
        self.painter.clear();
        self.hotspots.clear();
        for i in 0..self.features.len() {
            let color = self.colors[i];
            if color[3] == 0 {
                continue;
            }
            self.painter.set_color(color);
            let geometry = self.features[i].geometry.clone();
            let mut extent = Extent::default();
            match &geometry {
                Geometry::Point(p) => {
                    let (x, y) = view.lonlat_to_screen(p[0], p[1]);
                    self.painter.points(&[x], &[y], POINT_SIZE);
                    extent.add([x - POINT_SIZE / 2.0, y - POINT_SIZE / 2.0]);
                    extent.add([x + POINT_SIZE / 2.0, y + POINT_SIZE / 2.0]);
                }
                Geometry::PolyLine(parts) => {
                    for part in parts {
                        let pts = Self::project(view, part);
                        pts.iter().for_each(|&p| extent.add(p));
                        self.polyline(&pts);
                    }
                }
                Geometry::Polygon(rings) => {
                    for ring in rings {
                        let pts = Self::project(view, ring);
                        pts.iter().for_each(|&p| extent.add(p));
                        if !self.fill {
                            self.polyline(&pts);
                        } else if polygon_area(ring) >= 0.0 {
                            self.painter.poly_fill(&pts);
                        }
                    }
                }
            }
            if self.tooltip.is_some() {
                if let Some(r) = extent.rect() {
                    self.hotspots.add(r, i);
                }
            }
        }
    }

    fn draw(&mut self, frame: &mut Frame<'_>) {
        self.painter.batch_draw(frame.canvas);
        if let (Some((mx, my)), Some(f)) = (frame.mouse, &self.tooltip) {
            if let Some(&i) = self.hotspots.query(mx, my) {
                frame.ui.tooltip(f(&self.features[i].attributes), (mx, my));
            }
        }
    }

    fn bbox(&self) -> Option<BoundingBox> {
        let (lons, lats): (Vec<f64>, Vec<f64>) = self
            .features
            .iter()
            .flat_map(|f| f.geometry.vertices())
            .map(|p| (p[0], p[1]))
            .unzip();
        super::bbox_of(&lons, &lats)
    }
}

#[derive(Default)]
struct Extent {
    min: Option<Point>,
    max: Point,
}

impl Extent {
    fn add(&mut self, p: Point) {
        if !(p[0].is_finite() && p[1].is_finite()) {
            return;
        }
        match &mut self.min {
            None => {
                self.min = Some(p);
                self.max = p;
            }
            Some(m) => {
                m[0] = m[0].min(p[0]);
                m[1] = m[1].min(p[1]);
                self.max[0] = self.max[0].max(p[0]);
                self.max[1] = self.max[1].max(p[1]);
            }
        }
    }

    fn rect(&self) -> Option<Rect> {
        let m = self.min?;
        Some(Rect::new(m[0], m[1], (self.max[0] - m[0]).max(1.0), (self.max[1] - m[1]).max(1.0)))
    }
}

pub struct ShapefileOptions {
    pub color: Rgba,
    pub line_width: f64,
    pub tooltip: Option<FeatureTooltip>,
}

impl Default for ShapefileOptions {
    fn default() -> Self {
        ShapefileOptions {
            color: [0, 0, 255, 255],
            line_width: 1.0,
            tooltip: None,
        }
    }
}

/// Outlines of the shapes in an ESRI shapefile.
pub struct ShapefileLayer {
    inner: FeatureLayer,
}

impl ShapefileLayer {
    pub fn new(base: impl AsRef<Path>, opts: ShapefileOptions) -> Result<Self> {
        let parsed = read_shapefile(base)?;
        if parsed.skipped > 0 {
            log::warn!("{} shapes of unsupported type skipped", parsed.skipped);
        }
        Ok(Self::from_features(parsed.features, opts))
    }

    pub fn from_features(features: Vec<VectorFeature>, opts: ShapefileOptions) -> Self {
        ShapefileLayer {
            inner: FeatureLayer::new(
                features,
                &FeatureColor::Fixed(opts.color),
                false,
                opts.line_width,
                opts.tooltip,
            ),
        }
    }

    pub fn features(&self) -> &[VectorFeature] {
        &self.inner.features
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.inner.painter
    }

    pub fn tooltip_at(&self, x: f64, y: f64) -> Option<String> {
        let f = self.inner.tooltip.as_ref()?;
        let &i = self.inner.hotspots.query(x, y)?;
        Some(f(&self.inner.features[i].attributes))
    }
}

impl Layer for ShapefileLayer {
    fn invalidate(&mut self, view: &ViewState) {
        self.inner.invalidate(view);
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.inner.draw(frame);
    }

    fn bbox(&self) -> Option<BoundingBox> {
        self.inner.bbox()
    }
}

pub struct GeoJsonOptions {
    pub fill: bool,
    pub color: FeatureColor,
    pub line_width: f64,
    pub tooltip: Option<FeatureTooltip>,
}

impl Default for GeoJsonOptions {
    fn default() -> Self {
        GeoJsonOptions {
            fill: false,
            color: FeatureColor::Fixed([0, 0, 255, 255]),
            line_width: 1.0,
            tooltip: None,
        }
    }
}

/// GeoJSON features, optionally filled and colored from their properties
/// (choropleth).
pub struct GeoJsonLayer {
    inner: FeatureLayer,
}

impl GeoJsonLayer {
    pub fn new(path: impl AsRef<Path>, opts: GeoJsonOptions) -> Result<Self> {
        let parsed = read_geojson(path)?;
        if parsed.skipped > 0 {
            log::warn!("{} features with unsupported geometry skipped", parsed.skipped);
        }
        Ok(Self::from_features(parsed.features, opts))
    }

    pub fn from_features(features: Vec<VectorFeature>, opts: GeoJsonOptions) -> Self {
        GeoJsonLayer {
            inner: FeatureLayer::new(features, &opts.color, opts.fill, opts.line_width, opts.tooltip),
        }
    }

    pub fn features(&self) -> &[VectorFeature] {
        &self.inner.features
    }

    /// The resolved color of every feature, in feature order.
    pub fn feature_colors(&self) -> &[Rgba] {
        &self.inner.colors
    }

    pub fn painter(&self) -> &BatchPainter {
        &self.inner.painter
    }

    pub fn tooltip_at(&self, x: f64, y: f64) -> Option<String> {
        let f = self.inner.tooltip.as_ref()?;
        let &i = self.inner.hotspots.query(x, y)?;
        Some(f(&self.inner.features[i].attributes))
    }
}

impl Layer for GeoJsonLayer {
    fn invalidate(&mut self, view: &ViewState) {
        self.inner.invalidate(view);
    }

    fn draw(&mut self, _view: &ViewState, frame: &mut Frame<'_>) {
        self.inner.draw(frame);
    }

    fn bbox(&self) -> Option<BoundingBox> {
        self.inner.bbox()
    }
}
