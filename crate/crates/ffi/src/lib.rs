//! C ABI over the terramap renderer.
//!
//! Objects are opaque handles created by `*_new`/`*_read` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`TmStatus`]; on failure, [`tm_last_error`] describes the most recent
//! error on the calling thread. Panics are caught at the boundary and
//! reported as [`TmStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use terramap::layers::{DotColor, DotOptions, HistOptions, KdeOptions};
use terramap::projection::{lonlat_to_world, MAX_ZOOM};
use terramap::tiles::TileProvider;
use terramap::{BoundingBox, ColorMap, DataTable, Engine, Error, Scale};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    UnknownColumn = 5,
    Render = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmScale {
    Lin = 0,
    Log = 1,
    Sqrt = 2,
}

impl From<TmScale> for Scale {
    fn from(s: TmScale) -> Scale {
        match s {
            TmScale::Lin => Scale::Lin,
            TmScale::Log => Scale::Log,
            TmScale::Sqrt => Scale::Sqrt,
        }
    }
}

/// A column table of data rows.
pub struct TmTable(DataTable);

/// Accumulates layers and renders them.
pub struct TmEngine(Engine);

pub struct TmColorMap(ColorMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> TmStatus {
    match err {
        Error::Io { .. } => TmStatus::Io,
        Error::Csv { .. } | Error::Shapefile(_) | Error::Dbf(_) | Error::GeoJson(_) | Error::Image(_) => {
            TmStatus::Parse
        }
        Error::UnknownColumn(_) | Error::NotNumeric(_) => TmStatus::UnknownColumn,
        Error::Window(_) => TmStatus::Render,
        _ => TmStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), TmStatus>) -> TmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TmStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            TmStatus::Panic
        }
    }
}

fn check(r: terramap::Result<()>) -> Result<(), TmStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn invalid(msg: &str) -> TmStatus {
    set_error(msg);
    TmStatus::InvalidArgument
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, TmStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(TmStatus::NullPointer);
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not valid UTF-8")))
}

unsafe fn opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, TmStatus> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, what).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, TmStatus> {
    p.as_ref().ok_or_else(|| {
        set_error(format!("{what} is null"));
        TmStatus::NullPointer
    })
}

unsafe fn handle_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, TmStatus> {
    p.as_mut().ok_or_else(|| {
        set_error(format!("{what} is null"));
        TmStatus::NullPointer
    })
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, TmStatus> {
    p.as_mut().ok_or_else(|| {
        set_error("output pointer is null");
        TmStatus::NullPointer
    })
}

/// Message for the last failed call on this thread, or NULL. The string
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Reads a CSV file with a header row.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_table_read_csv(path: *const c_char, out: *mut *mut TmTable) -> TmStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let path = str_arg(path, "path")?;
        let table = DataTable::read_csv(path).map_err(|e| {
            set_error(e.to_string());
            status_of(&e)
        })?;
        *out = Box::into_raw(Box::new(TmTable(table)));
        Ok(())
    })
}

/// Builds a table with `lat` and `lon` columns from `n` coordinate pairs.
///
/// # Safety
/// `lats` and `lons` must each point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_table_from_latlon(
    lats: *const f64,
    lons: *const f64,
    n: usize,
    out: *mut *mut TmTable,
) -> TmStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        if n > 0 && (lats.is_null() || lons.is_null()) {
            set_error("coordinate array is null");
            return Err(TmStatus::NullPointer);
        }
        let (lats, lons) = if n == 0 {
            (Vec::new(), Vec::new())
        } else {
            (
                std::slice::from_raw_parts(lats, n).to_vec(),
                std::slice::from_raw_parts(lons, n).to_vec(),
            )
        };
        let table = DataTable::from_columns([("lat", lats), ("lon", lons)]).map_err(|e| {
            set_error(e.to_string());
            status_of(&e)
        })?;
        *out = Box::into_raw(Box::new(TmTable(table)));
        Ok(())
    })
}

/// Row count, or 0 for NULL.
///
/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tm_table_nrows(table: *const TmTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.nrows())
}

/// # Safety
/// `table` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_table_free(table: *mut TmTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// A new engine with default size and the tile provider from the
/// environment. Never NULL.
#[no_mangle]
pub extern "C" fn tm_engine_new() -> *mut TmEngine {
    Box::into_raw(Box::new(TmEngine(Engine::new())))
}

/// # Safety
/// `engine` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_free(engine: *mut TmEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Number of layers added since the last render.
///
/// # Safety
/// `engine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_layer_count(engine: *const TmEngine, out: *mut usize) -> TmStatus {
    guard(|| {
        *out_ptr(out)? = handle(engine, "engine")?.0.layer_count();
        Ok(())
    })
}

/// # Safety
/// `engine` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_set_size(engine: *mut TmEngine, width: u32, height: u32) -> TmStatus {
    guard(|| {
        let e = handle_mut(engine, "engine")?;
        if width == 0 || height == 0 {
            return Err(invalid("size must be positive"));
        }
        e.0.set_size(width, height);
        Ok(())
    })
}

/// Fixes the map extent instead of fitting it to the data.
///
/// # Safety
/// `engine` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_set_bbox(
    engine: *mut TmEngine,
    north: f64,
    west: f64,
    south: f64,
    east: f64,
) -> TmStatus {
    guard(|| {
        let e = handle_mut(engine, "engine")?;
        let b = BoundingBox::new(north, west, south, east);
        check(b.map(|b| e.0.set_bbox(b)))
    })
}

/// Tile preset name or URL template. NULL or `"none"` renders on a blank
/// background.
///
/// # Safety
/// `engine` must be a live handle; `spec` must be NULL or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_set_tiles(engine: *mut TmEngine, spec: *const c_char) -> TmStatus {
    guard(|| {
        let e = handle_mut(engine, "engine")?;
        match opt_str(spec, "spec")? {
            None | Some("none") => e.0.tile_provider(None),
            Some(s) => check(TileProvider::parse(s).map(|p| e.0.tile_provider(Some(p))))?,
        }
        Ok(())
    })
}

/// # Safety
/// `engine` must be a live handle; `dir` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_set_tile_cache(engine: *mut TmEngine, dir: *const c_char) -> TmStatus {
    guard(|| {
        let e = handle_mut(engine, "engine")?;
        e.0.set_tile_cache_dir(str_arg(dir, "dir")?);
        Ok(())
    })
}

/// Adds a dot layer over the table's `lat`/`lon` columns. `rgba` may be
/// NULL for the default red.
///
/// # Safety
/// `engine` and `table` must be live handles; `rgba` must be NULL or point
/// to 4 bytes.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_dot(
    engine: *mut TmEngine,
    table: *const TmTable,
    point_size: f64,
    rgba: *const u8,
) -> TmStatus {
    guard(|| {
        let e = handle_mut(engine, "engine")?;
        let t = handle(table, "table")?;
        if !(point_size > 0.0 && point_size.is_finite()) {
            return Err(invalid("point_size must be positive"));
        }
        let mut opts = DotOptions {
            point_size,
            ..DotOptions::default()
        };
        if !rgba.is_null() {
            let c = std::slice::from_raw_parts(rgba, 4);
            opts.color = DotColor::Fixed([c[0], c[1], c[2], c[3]]);
        }
        check(e.0.dot(&t.0, opts))
    })
}

fn cmap_arg(name: Option<&str>, alpha: u8) -> Result<ColorMap, TmStatus> {
    ColorMap::new(name.unwrap_or("hot"))
        .map(|c| c.with_alpha(alpha))
        .map_err(|e| {
            set_error(e.to_string());
            status_of(&e)
        })
}

/// Adds a 2D histogram layer. `cmap` may be NULL for `hot`.
///
/// # Safety
/// `engine` and `table` must be live handles; `cmap` must be NULL or
/// NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_hist(
    engine: *mut TmEngine,
    table: *const TmTable,
    binsize: f64,
    cmap: *const c_char,
) -> TmStatus {
    guard(|| {
        let e = handle_mut(engine, "engine")?;
        let t = handle(table, "table")?;
        let opts = HistOptions {
            binsize,
            cmap: cmap_arg(opt_str(cmap, "cmap")?, 220)?,
            ..HistOptions::default()
        };
        check(e.0.hist(&t.0, opts))
    })
}

/// Adds a kernel density layer with bandwidth in screen pixels. `cmap` may
/// be NULL for `hot`.
///
/// # Safety
/// `engine` and `table` must be live handles; `cmap` must be NULL or
/// NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_kde(
    engine: *mut TmEngine,
    table: *const TmTable,
    bw_x: f64,
    bw_y: f64,
    cmap: *const c_char,
) -> TmStatus {
    guard(|| {
        let e = handle_mut(engine, "engine")?;
        let t = handle(table, "table")?;
        let mut opts = KdeOptions {
            cmap: cmap_arg(opt_str(cmap, "cmap")?, 220)?,
            ..KdeOptions::default()
        };
        opts.params.bw = (bw_x, bw_y);
        check(e.0.kde(&t.0, opts))
    })
}

/// Renders all layers to a PNG and clears the engine's layers and bbox.
///
/// # Safety
/// `engine` must be a live handle; `path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_savefig(engine: *mut TmEngine, path: *const c_char) -> TmStatus {
    guard(|| {
        let e = handle_mut(engine, "engine")?;
        let path = str_arg(path, "path")?;
        check(e.0.savefig(path))
    })
}

/// A named colormap. `levels` of 0 keeps it continuous; otherwise colors
/// are quantized to that many steps.
///
/// # Safety
/// `name` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_colormap_new(
    name: *const c_char,
    alpha: u8,
    levels: u32,
    out: *mut *mut TmColorMap,
) -> TmStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let name = str_arg(name, "name")?;
        let mut cmap = cmap_arg(Some(name), alpha)?;
        if levels > 0 {
            cmap = cmap.with_levels(levels).map_err(|e| {
                set_error(e.to_string());
                status_of(&e)
            })?;
        }
        *out = Box::into_raw(Box::new(TmColorMap(cmap)));
        Ok(())
    })
}

/// # Safety
/// `cmap` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_colormap_free(cmap: *mut TmColorMap) {
    if !cmap.is_null() {
        drop(Box::from_raw(cmap));
    }
}

/// Maps `value` in `[0, max]` to RGBA through `scale`.
///
/// # Safety
/// `cmap` must be a live handle; `out` must point to 4 writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tm_colormap_to_color(
    cmap: *const TmColorMap,
    value: f64,
    max: f64,
    scale: TmScale,
    out: *mut u8,
) -> TmStatus {
    guard(|| {
        let c = handle(cmap, "cmap")?;
        if out.is_null() {
            set_error("output pointer is null");
            return Err(TmStatus::NullPointer);
        }
        let rgba = c.0.to_color(value, max, scale.into()).map_err(|e| {
            set_error(e.to_string());
            status_of(&e)
        })?;
        std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&rgba);
        Ok(())
    })
}

/// Web Mercator world pixel coordinates of a point at `zoom`.
///
/// # Safety
/// `wx` and `wy` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_lonlat_to_world(lon: f64, lat: f64, zoom: u8, wx: *mut f64, wy: *mut f64) -> TmStatus {
    guard(|| {
        let (wx, wy) = (out_ptr(wx)?, out_ptr(wy)?);
        if zoom > MAX_ZOOM {
            return Err(invalid("zoom out of range"));
        }
        if !(lon.is_finite() && lat.is_finite()) {
            return Err(invalid("coordinates must be finite"));
        }
        (*wx, *wy) = lonlat_to_world(lon, lat, zoom);
        Ok(())
    })
}
