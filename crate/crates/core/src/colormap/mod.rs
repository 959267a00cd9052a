//! Continuous and categorical colormaps.

mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// 8-bit RGBA, non-premultiplied.
pub type Rgba = [u8; 4];

/// How a value is mapped onto `[0, 1]` before the color lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    Lin,
    Log,
    #[default]
    Sqrt,
}

impl Scale {
    pub const ALL: [Scale; 3] = [Scale::Lin, Scale::Log, Scale::Sqrt];

    /// Position of `value` (already clamped to `[0, max]`) in `[0, 1]`.
    pub fn apply(self, value: f64, max: f64) -> f64 {
        match self {
            Scale::Lin => value / max,
            Scale::Log => value.ln_1p() / max.ln_1p(),
            Scale::Sqrt => (value / max).sqrt(),
        }
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lin" | "linear" => Ok(Scale::Lin),
            "log" => Ok(Scale::Log),
            "sqrt" => Ok(Scale::Sqrt),
            _ => Err(Error::InvalidArgument(format!(
                "unknown scale '{s}' (expected lin, log or sqrt)"
            ))),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Lin => "lin",
            Scale::Log => "log",
            Scale::Sqrt => "sqrt",
        })
    }
}

const NAMED_TABLES: [(&str, &[[u8; 3]]); 7] = [
    ("hot", &tables::HOT),
    ("jet", &tables::JET),
    ("coolwarm", &tables::COOLWARM),
    ("Blues", &tables::BLUES),
    ("Reds", &tables::REDS),
    ("hsv", &tables::HSV),
    ("viridis", &tables::VIRIDIS),
];

/// A continuous colormap: evenly spaced RGB control points, linearly
/// interpolated, with a uniform alpha and optional quantization.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorMap {
    name: String,
    table: Vec<[u8; 3]>,
    alpha: u8,
    levels: Option<u32>,
}

impl ColorMap {
    /// One of [`ColorMap::names`], optionally suffixed with `_r` for the
    /// reversed map.
    pub fn new(name: &str) -> Result<Self> {
        let (base, reversed) = match name.strip_suffix("_r") {
            Some(b) => (b, true),
            None => (name, false),
        };
        let table = NAMED_TABLES
            .iter()
            .find(|(n, _)| *n == base)
            .map(|(_, t)| t.to_vec())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown colormap '{name}'")))?;
        let mut cmap = ColorMap::from_table(name, table)?;
        if reversed {
            cmap.table.reverse();
        }
        Ok(cmap)
    }

    pub fn from_table(name: &str, table: Vec<[u8; 3]>) -> Result<Self> {
        if table.len() < 2 {
            return Err(Error::InvalidArgument(
                "a colormap needs at least two control points".into(),
            ));
        }
        Ok(ColorMap {
            name: name.to_owned(),
            table,
            alpha: 255,
            levels: None,
        })
    }

    /// Names of the built-in maps.
    pub fn names() -> impl Iterator<Item = &'static str> {
        NAMED_TABLES.iter().map(|(n, _)| *n)
    }

    pub fn with_alpha(mut self, alpha: u8) -> Self {
        self.alpha = alpha;
        self
    }

    /// Restricts the output to at most `levels` distinct colors.
    pub fn with_levels(mut self, levels: u32) -> Result<Self> {
        if levels == 0 {
            return Err(Error::InvalidArgument("levels must be positive".into()));
        }
        self.levels = Some(levels);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self) -> u8 {
        self.alpha
    }

    pub fn levels(&self) -> Option<u32> {
        self.levels
    }

    pub fn control_points(&self) -> &[[u8; 3]] {
        &self.table
    }

    /// Color of `value` on a scale ending at `max_value`.
    ///
    /// The value is clamped to `[0, max_value]` and mapped to `t` by `scale`.
    /// With `levels = k`, `t` is snapped to `floor(t * k) / max(k - 1, 1)`.
    pub fn to_color(&self, value: f64, max_value: f64, scale: Scale) -> Result<Rgba> {
        if !(max_value > 0.0 && max_value.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "max_value must be positive and finite, got {max_value}"
            )));
        }
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "cannot map non-finite value {value} to a color"
            )));
        }
        let v = value.clamp(0.0, max_value);
        let mut t = scale.apply(v, max_value);
        if let Some(k) = self.levels {
            let k = k as f64;
            t = ((t * k).floor() / (k - 1.0).max(1.0)).clamp(0.0, 1.0);
        }
        Ok(self.at(t))
    }

    /// Interpolated color at `t` in `[0, 1]` (clamped), without quantization.
    pub fn at(&self, t: f64) -> Rgba {
        let t = if t.is_nan() { 0.0 } else { t.clamp(0.0, 1.0) };
        let last = self.table.len() - 1;
        let pos = t * last as f64;
        let i = (pos.floor() as usize).min(last - 1);
        let frac = pos - i as f64;
        let a = self.table[i];
        let b = self.table[i + 1];
        let mix = |x: u8, y: u8| (x as f64 + (y as f64 - x as f64) * frac).round() as u8;
        [mix(a[0], b[0]), mix(a[1], b[1]), mix(a[2], b[2]), self.alpha]
    }
}

/// A fixed color per category.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoricalColorMap<K: Ord> {
    colors: BTreeMap<K, Rgba>,
}

impl<K: Ord> CategoricalColorMap<K> {
    pub fn get(&self, category: &K) -> Option<Rgba> {
        self.colors.get(category).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rgba)> {
        self.colors.iter()
    }
}

/// ColorBrewer "Paired", a 12-class qualitative scheme.
pub const QUALITATIVE_12: [[u8; 3]; 12] = [
    [0xa6, 0xce, 0xe3],
    [0x1f, 0x78, 0xb4],
    [0xb2, 0xdf, 0x8a],
    [0x33, 0xa0, 0x2c],
    [0xfb, 0x9a, 0x99],
    [0xe3, 0x1a, 0x1c],
    [0xfd, 0xbf, 0x6f],
    [0xff, 0x7f, 0x00],
    [0xca, 0xb2, 0xd6],
    [0x6a, 0x3d, 0x9a],
    [0xff, 0xff, 0x99],
    [0xb1, 0x59, 0x28],
];

fn sorted_distinct<K: Ord + Clone>(categories: &[K]) -> Vec<K> {
    let mut cats = categories.to_vec();
    cats.sort();
    cats.dedup();
    cats
}

/// Assigns qualitative palette entries to categories in sorted order.
pub fn colorbrewer<K: Ord + Clone>(categories: &[K]) -> Result<CategoricalColorMap<K>> {
    let cats = sorted_distinct(categories);
    if cats.len() > QUALITATIVE_12.len() {
        return Err(Error::InvalidArgument(format!(
            "{} categories exceed the {}-color qualitative palette",
            cats.len(),
            QUALITATIVE_12.len()
        )));
    }
    let colors = cats
        .into_iter()
        .zip(QUALITATIVE_12)
        .map(|(k, [r, g, b])| (k, [r, g, b, 255]))
        .collect();
    Ok(CategoricalColorMap { colors })
}

/// Samples the continuous map `cmap_name` at evenly spaced `t` values, one
/// per category in sorted order.
pub fn create_set_cmap<K: Ord + Clone>(
    cmap_name: &str,
    categories: &[K],
) -> Result<CategoricalColorMap<K>> {
    let cmap = ColorMap::new(cmap_name)?;
    let cats = sorted_distinct(categories);
    let denom = (cats.len().max(2) - 1) as f64;
    let colors = cats
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, cmap.at(i as f64 / denom)))
        .collect();
    Ok(CategoricalColorMap { colors })
}

/// Parses a single-letter color (`b g r c m y k w`), `#rrggbb` or
/// `#rrggbbaa`.
pub fn parse_color(s: &str) -> Result<Rgba> {
    let named = match s {
        "b" | "blue" => Some([0, 0, 255, 255]),
        "g" | "green" => Some([0, 128, 0, 255]),
        "r" | "red" => Some([255, 0, 0, 255]),
        "c" | "cyan" => Some([0, 191, 191, 255]),
        "m" | "magenta" => Some([191, 0, 191, 255]),
        "y" | "yellow" => Some([191, 191, 0, 255]),
        "k" | "black" => Some([0, 0, 0, 255]),
        "w" | "white" => Some([255, 255, 255, 255]),
        _ => None,
    };
    if let Some(c) = named {
        return Ok(c);
    }
    let bad = || Error::InvalidArgument(format!("cannot parse color '{s}'"));
    let hex = s.strip_prefix('#').ok_or_else(bad)?;
    if !(hex.len() == 6 || hex.len() == 8) || !hex.is_ascii() {
        return Err(bad());
    }
    let byte = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| bad());
    let alpha = if hex.len() == 8 { byte(6)? } else { 255 };
    Ok([byte(0)?, byte(2)?, byte(4)?, alpha])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        for name in ColorMap::names() {
            let cmap = ColorMap::new(name).unwrap();
            let first = cmap.control_points()[0];
            let last = *cmap.control_points().last().unwrap();
            for scale in Scale::ALL {
                let lo = cmap.to_color(0.0, 100.0, scale).unwrap();
                let hi = cmap.to_color(100.0, 100.0, scale).unwrap();
                assert_eq!(lo, [first[0], first[1], first[2], 255], "{name} {scale}");
                assert_eq!(hi, [last[0], last[1], last[2], 255], "{name} {scale}");
            }
        }
    }

    #[test]
    fn reversed_maps() {
        let hot = ColorMap::new("hot").unwrap();
        let hot_r = ColorMap::new("hot_r").unwrap();
        assert_eq!(hot.at(0.0), hot_r.at(1.0));
        assert_eq!(hot.at(1.0), hot_r.at(0.0));
        assert!(ColorMap::new("nope").is_err());
    }

    #[test]
    fn errors() {
        let cmap = ColorMap::new("hot").unwrap();
        assert!(cmap.to_color(1.0, 0.0, Scale::Lin).is_err());
        assert!(cmap.to_color(1.0, -1.0, Scale::Lin).is_err());
        assert!(cmap.to_color(f64::NAN, 1.0, Scale::Lin).is_err());
        assert!(cmap.clone().with_levels(0).is_err());
    }

    #[test]
    fn alpha_applied() {
        let cmap = ColorMap::new("Reds").unwrap().with_alpha(128);
        assert_eq!(cmap.to_color(10.0, 100.0, Scale::Log).unwrap()[3], 128);
    }

    #[test]
    fn levels_quantize() {
        let cmap = ColorMap::new("coolwarm").unwrap().with_levels(4).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..=1000 {
            seen.insert(cmap.to_color(i as f64, 1000.0, Scale::Lin).unwrap());
        }
        assert!(seen.len() <= 4);
        let one = ColorMap::new("hot").unwrap().with_levels(1).unwrap();
        assert_eq!(one.to_color(0.3, 1.0, Scale::Lin).unwrap(), one.at(0.0));
    }

    #[test]
    fn set_cmap_spacing() {
        let set = create_set_cmap("jet", &[3, 1, 2]).unwrap();
        let jet = ColorMap::new("jet").unwrap();
        assert_eq!(set.get(&1), Some(jet.at(0.0)));
        assert_eq!(set.get(&2), Some(jet.at(0.5)));
        assert_eq!(set.get(&3), Some(jet.at(1.0)));
    }

    #[test]
    fn colorbrewer_limits() {
        let cats: Vec<u32> = (0..13).collect();
        assert!(colorbrewer(&cats).is_err());
        assert_eq!(colorbrewer(&cats[..12]).unwrap().len(), 12);
        assert_eq!(colorbrewer(&[1, 2, 3]).unwrap(), colorbrewer(&[3, 2, 1]).unwrap());
    }

    #[test]
    fn named_colors() {
        assert_eq!(parse_color("b").unwrap(), [0, 0, 255, 255]);
        assert_eq!(parse_color("#ff000080").unwrap(), [255, 0, 0, 128]);
        assert!(parse_color("#ff00").is_err());
        assert!(parse_color("q").is_err());
    }
}
