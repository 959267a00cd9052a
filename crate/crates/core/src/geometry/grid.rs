use super::Rect;
use crate::{Error, Result};

/// A uniform grid of cells over a screen rectangle, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub origin_sx: f64,
    pub origin_sy: f64,
    pub cell_px: f64,
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

impl Grid2D {
    /// An all-zero grid covering `viewport` with whole cells.
    pub fn covering(viewport: Rect, cell_px: f64) -> Result<Self> {
        if !(cell_px >= 1.0 && cell_px.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "cell size must be at least 1 px, got {cell_px}"
            )));
        }
        let width = (viewport.w / cell_px).ceil().max(0.0) as usize;
        let height = (viewport.h / cell_px).ceil().max(0.0) as usize;
        Ok(Grid2D {
            origin_sx: viewport.x,
            origin_sy: viewport.y,
            cell_px,
            width,
            height,
            values: vec![0.0; width * height],
        })
    }

    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.width + ix]
    }

    /// Cell containing a screen point, if inside the grid.
    pub fn cell_of(&self, sx: f64, sy: f64) -> Option<(usize, usize)> {
        let fx = ((sx - self.origin_sx) / self.cell_px).floor();
        let fy = ((sy - self.origin_sy) / self.cell_px).floor();
        // NaN fails both comparisons.
        if fx >= 0.0 && fy >= 0.0 && fx < self.width as f64 && fy < self.height as f64 {
            Some((fx as usize, fy as usize))
        } else {
            None
        }
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Row-major index of the largest value (first on ties).
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, &v) in self.values.iter().enumerate() {
            if best.is_none_or(|b| v > self.values[b]) {
                best = Some(i);
            }
        }
        best
    }
}

/// Counts points per `cell_px`-sized cell over `viewport`. Points outside
/// the viewport (extended to whole cells) and NaN points are dropped.
pub fn bin2d(sx: &[f64], sy: &[f64], cell_px: f64, viewport: Rect) -> Result<Grid2D> {
    if sx.len() != sy.len() {
        return Err(Error::LengthMismatch {
            expected: sx.len(),
            found: sy.len(),
            what: "y coordinates".into(),
        });
    }
    let mut grid = Grid2D::covering(viewport, cell_px)?;
    for (&x, &y) in sx.iter().zip(sy) {
        if let Some((ix, iy)) = grid.cell_of(x, y) {
            grid.values[iy * grid.width + ix] += 1.0;
        }
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let g = bin2d(&[10.0], &[20.0], 8.0, Rect::screen(64, 64)).unwrap();
        assert_eq!(g.width, 8);
        assert_eq!(g.sum(), 1.0);
        assert_eq!(g.get(1, 2), 1.0);
    }

    #[test]
    fn partial_cells_extend_viewport() {
        let g = bin2d(&[99.0, 100.5, -0.1, f64::NAN], &[1.0; 4], 8.0, Rect::screen(99, 10))
            .unwrap();
        assert_eq!(g.width, 13);
        // 99.0 and 100.5 fall in the last (partial) cell column 12.
        assert_eq!(g.sum(), 2.0);
    }

    #[test]
    fn rejects_small_cells() {
        assert!(bin2d(&[], &[], 0.5, Rect::screen(10, 10)).is_err());
    }
}
