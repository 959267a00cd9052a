//! ESRI shapefile geometry (`.shp`), joined with `.dbf` attributes by record
//! index. The `.shx` index is not needed for a sequential scan.

use std::path::{Path, PathBuf};

use super::dbf::parse_dbf;
use super::{normalize_ring, Geometry, LonLat, ParsedFeatures, VectorFeature};
use crate::geometry::polygon_area;
use crate::{Error, Result};

const FILE_CODE: i32 = 9994;
const VERSION: i32 = 1000;
const HEADER_LEN: usize = 100;

const NULL: i32 = 0;
const POINT: i32 = 1;
const POLYLINE: i32 = 3;
const POLYGON: i32 = 5;

fn be_i32(b: &[u8], at: usize) -> i32 {
    i32::from_be_bytes(b[at..at + 4].try_into().unwrap())
}

fn le_i32(b: &[u8], at: usize) -> i32 {
    i32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

fn le_f64(b: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(b[at..at + 8].try_into().unwrap())
}

fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Reads `base.shp` and `base.dbf`. A trailing `.shp` on `base` is ignored.
///
/// Null shapes and unsupported shape types are skipped (the latter are
/// counted in [`ParsedFeatures::skipped`]); attributes stay aligned with the
/// record index either way.
pub fn read_shapefile(base: impl AsRef<Path>) -> Result<ParsedFeatures> {
    let base = base.as_ref();
    let base = match base.extension() {
        Some(e) if e.eq_ignore_ascii_case("shp") => base.with_extension(""),
        _ => base.to_path_buf(),
    };
    let shp_path = with_ext(&base, "shp");
    let dbf_path = with_ext(&base, "dbf");
    let shp = std::fs::read(&shp_path).map_err(|e| Error::io(&shp_path, e))?;
    let dbf = std::fs::read(&dbf_path).map_err(|e| Error::io(&dbf_path, e))?;
    let shapes = parse_shp(&shp)?;
    let table = parse_dbf(&dbf)?;
    if table.records.len() != shapes.len() {
        log::warn!(
            "{}: {} shapes but {} attribute records",
            base.display(),
            shapes.len(),
            table.records.len()
        );
    }
    let mut records = table.records.into_iter();
    let mut out = ParsedFeatures::default();
    for shape in shapes {
        let attributes = records.next().unwrap_or_default();
        match shape {
            Shape::Geometry(geometry) => out.features.push(VectorFeature {
                geometry,
                attributes,
            }),
            Shape::Null => {}
            Shape::Unsupported(kind) => {
                log::warn!("skipping shape of unsupported type {kind}");
                out.skipped += 1;
            }
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Shape {
    Geometry(Geometry),
    Null,
    Unsupported(i32),
}

fn parse_shp(bytes: &[u8]) -> Result<Vec<Shape>> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Shapefile("file shorter than its 100-byte header".into()));
    }
    let code = be_i32(bytes, 0);
    if code != FILE_CODE {
        return Err(Error::Shapefile(format!("bad file code {code}, expected {FILE_CODE}")));
    }
    let version = le_i32(bytes, 28);
    if version != VERSION {
        return Err(Error::Shapefile(format!("unsupported version {version}")));
    }
    let declared = be_i32(bytes, 24) as usize * 2;
    if declared > bytes.len() {
        return Err(Error::Shapefile(format!(
            "truncated: header declares {declared} bytes, file has {}",
            bytes.len()
        )));
    }

    let mut shapes = Vec::new();
    let mut off = HEADER_LEN;
    while off < declared {
        if off + 8 > declared {
            return Err(Error::Shapefile(format!("truncated record header at byte {off}")));
        }
        let content_len = be_i32(bytes, off + 4) as usize * 2;
        let start = off + 8;
        let end = start + content_len;
        if end > declared || content_len < 4 {
            return Err(Error::Shapefile(format!(
                "record at byte {off} runs past the end of the file"
            )));
        }
        shapes.push(parse_record(&bytes[start..end], start)?);
        off = end;
    }
    Ok(shapes)
}

fn parse_record(rec: &[u8], at: usize) -> Result<Shape> {
    let short = || Error::Shapefile(format!("record content at byte {at} is too short"));
    let kind = le_i32(rec, 0);
    match kind {
        NULL => Ok(Shape::Null),
        POINT => {
            if rec.len() < 20 {
                return Err(short());
            }
            Ok(Shape::Geometry(Geometry::Point([le_f64(rec, 4), le_f64(rec, 12)])))
        }
        POLYLINE | POLYGON => {
            if rec.len() < 44 {
                return Err(short());
            }
            let nparts = le_i32(rec, 36);
            let npoints = le_i32(rec, 40);
            if nparts < 0 || npoints < 0 {
                return Err(Error::Shapefile(format!("negative counts at byte {at}")));
            }
            let (nparts, npoints) = (nparts as usize, npoints as usize);
            let pts_at = 44 + 4 * nparts;
            if rec.len() < pts_at + 16 * npoints {
                return Err(short());
            }
            let mut starts: Vec<usize> = (0..nparts)
                .map(|i| le_i32(rec, 44 + 4 * i).max(0) as usize)
                .collect();
            starts.push(npoints);
            if starts.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Shapefile(format!("part offsets out of order at byte {at}")));
            }
            let point = |i: usize| -> LonLat {
                [le_f64(rec, pts_at + 16 * i), le_f64(rec, pts_at + 16 * i + 8)]
            };
            let parts: Vec<Vec<LonLat>> = starts
                .windows(2)
                .map(|w| (w[0]..w[1]).map(point).collect())
                .collect();
            if kind == POLYLINE {
                Ok(Shape::Geometry(Geometry::PolyLine(parts)))
            } else {
                // Shapefile outer rings are clockwise, holes counterclockwise.
                let rings = parts
                    .into_iter()
                    .map(|r| {
                        let outer = polygon_area(&r) <= 0.0;
                        normalize_ring(r, outer)
                    })
                    .collect();
                Ok(Shape::Geometry(Geometry::Polygon(rings)))
            }
        }
        other => Ok(Shape::Unsupported(other)),
    }
}
