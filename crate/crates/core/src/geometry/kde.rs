use super::grid::{bin2d, Grid2D};
use super::Rect;
use crate::colormap::Scale;
use crate::{Error, Result};

/// Grid kernel density parameters. Bandwidths and cell size are in screen
/// pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KdeParams {
    pub bw: (f64, f64),
    /// Densities below this are set to zero.
    pub cut_below: Option<f64>,
    /// Densities above this are clipped to it.
    pub clip_above: Option<f64>,
    pub cell_px: f64,
    pub scaling: Scale,
}

impl Default for KdeParams {
    fn default() -> Self {
        KdeParams {
            bw: (5.0, 5.0),
            cut_below: None,
            clip_above: None,
            cell_px: 2.0,
            scaling: Scale::Sqrt,
        }
    }
}

impl KdeParams {
    pub fn validate(&self) -> Result<()> {
        let (sx, sy) = self.bw;
        if !(sx > 0.0 && sy > 0.0 && sx.is_finite() && sy.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "bandwidth must be positive, got [{sx}, {sy}]"
            )));
        }
        if let Some(c) = self.cut_below {
            if c.is_nan() || c < 0.0 {
                return Err(Error::InvalidArgument(format!("cut_below must be >= 0, got {c}")));
            }
        }
        if let Some(c) = self.clip_above {
            if c.is_nan() || c <= 0.0 {
                return Err(Error::InvalidArgument(format!("clip_above must be > 0, got {c}")));
            }
            if let Some(cut) = self.cut_below {
                if c <= cut {
                    return Err(Error::InvalidArgument(
                        "clip_above must exceed cut_below".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Normalized 1-D Gaussian weights for offsets `-r..=r` cells, with
/// `r = floor(3 * sigma)`.
pub fn gaussian_weights(sigma_cells: f64) -> Vec<f64> {
    let r = (3.0 * sigma_cells).floor() as i64;
    let mut w: Vec<f64> = (-r..=r)
        .map(|k| (-((k * k) as f64) / (2.0 * sigma_cells * sigma_cells)).exp())
        .collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

/// Bins the points at `params.cell_px` and convolves the counts with a
/// separable, truncated Gaussian. Mass that spreads past the grid edge is
/// lost; interior mass is conserved.
pub fn kde_grid(sx: &[f64], sy: &[f64], params: &KdeParams, viewport: Rect) -> Result<Grid2D> {
    params.validate()?;
    let mut grid = bin2d(sx, sy, params.cell_px, viewport)?;
    let wx = gaussian_weights(params.bw.0 / params.cell_px);
    let wy = gaussian_weights(params.bw.1 / params.cell_px);
    let (w, h) = (grid.width, grid.height);
    if w == 0 || h == 0 {
        return Ok(grid);
    }

    // Scatter form of the convolution: zero cells are skipped, which keeps
    // sparse inputs cheap.
    let rx = (wx.len() / 2) as isize;
    let mut tmp = vec![0.0; w * h];
    for iy in 0..h {
        let row = &grid.values[iy * w..(iy + 1) * w];
        let out = &mut tmp[iy * w..(iy + 1) * w];
        for (ix, &v) in row.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let lo = (ix as isize - rx).max(0) as usize;
            let hi = (ix as isize + rx).min(w as isize - 1) as usize;
            for (j, o) in out[lo..=hi].iter_mut().enumerate() {
                let k = (lo + j) as isize - ix as isize + rx;
                *o += v * wx[k as usize];
            }
        }
    }

    let ry = (wy.len() / 2) as isize;
    let out = &mut grid.values;
    out.iter_mut().for_each(|v| *v = 0.0);
    for iy in 0..h {
        let lo = (iy as isize - ry).max(0) as usize;
        let hi = (iy as isize + ry).min(h as isize - 1) as usize;
        let src = &tmp[iy * w..(iy + 1) * w];
        if src.iter().all(|&v| v == 0.0) {
            continue;
        }
        for ty in lo..=hi {
            let k = wy[(ty as isize - iy as isize + ry) as usize];
            let dst = &mut out[ty * w..(ty + 1) * w];
            for (d, &s) in dst.iter_mut().zip(src) {
                *d += s * k;
            }
        }
    }

    for v in out.iter_mut() {
        if let Some(cut) = params.cut_below {
            if *v < cut {
                *v = 0.0;
            }
        }
        if let Some(clip) = params.clip_above {
            if *v > clip {
                *v = clip;
            }
        }
    }
    Ok(grid)
}
