//! The frame loop: input handling, invalidation on view changes, tiles,
//! layers and UI, over either a window or an offscreen canvas.

mod hotspot;
mod ui;
#[cfg(feature = "window")]
mod window;

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use crate::colormap::Rgba;
use crate::layers::{Frame, Layer};
use crate::projection::{ViewState, TILE_SIZE};
use crate::render::Canvas;
use crate::tiles::{tiles_for_view, TileCache, TileHandle, TileProvider};
use crate::Result;

pub use hotspot::{HotspotIndex, DEFAULT_BUCKET_PX};
pub use ui::{UiManager, TOOLTIP_OFFSET};

/// Keys as seen by the viewer and by layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Key {
    Plus,
    Minus,
    Left,
    Right,
    Up,
    Down,
    Escape,
    /// A printable key, upper-cased for letters.
    Char(char),
}

impl Key {
    /// Keys the viewer handles itself; layers never see them.
    pub fn is_reserved(self) -> bool {
        !matches!(self, Key::Char(c) if c != 'P')
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputEvent {
    MouseMove { x: f64, y: f64 },
    MouseLeave,
    /// Map content dragged by `(dx, dy)` pixels.
    Drag { dx: f64, dy: f64 },
    /// Wheel steps; positive zooms in, one level per event.
    Scroll { steps: i32 },
    KeyRelease(Key),
    Resize { width: u32, height: u32 },
    Quit,
}

/// Arrow keys pan by this fraction of the viewport.
pub const PAN_FRACTION: f64 = 0.25;

/// Base-map tiles for the viewer.
#[derive(Clone)]
pub struct Basemap {
    pub provider: TileProvider,
    pub cache: Arc<TileCache>,
}

pub struct Viewer {
    layers: Vec<Box<dyn Layer>>,
    view: ViewState,
    basemap: Option<Basemap>,
    canvas: Canvas,
    ui: UiManager,
    mouse: Option<(f64, f64)>,
    dirty: bool,
    frame_index: u64,
    screenshot_dir: PathBuf,
    last_screenshot: Option<PathBuf>,
    background: Rgba,
    quit: bool,
    layer_draw_calls: u64,
}

impl Viewer {
    pub fn new(view: ViewState, layers: Vec<Box<dyn Layer>>, basemap: Option<Basemap>) -> Self {
        let mut ui = UiManager::new();
        if let Some(b) = &basemap {
            ui.set_attribution(b.provider.attribution.clone());
        }
        Viewer {
            layers,
            canvas: Canvas::new(view.screen_w, view.screen_h),
            view,
            basemap,
            ui,
            mouse: None,
            dirty: true,
            frame_index: 0,
            screenshot_dir: PathBuf::from("."),
            last_screenshot: None,
            background: [255, 255, 255, 255],
            quit: false,
            layer_draw_calls: 0,
        }
    }

    pub fn set_screenshot_dir(&mut self, dir: impl Into<PathBuf>) {
        self.screenshot_dir = dir.into();
    }

    pub fn set_background(&mut self, color: Rgba) {
        self.background = color;
    }

    pub fn view(&self) -> &ViewState {
        &self.view
    }

    pub fn canvas(&self) -> &Canvas {
        &self.canvas
    }

    pub fn ui(&self) -> &UiManager {
        &self.ui
    }

    pub fn ui_mut(&mut self) -> &mut UiManager {
        &mut self.ui
    }

    pub fn layers(&self) -> &[Box<dyn Layer>] {
        &self.layers
    }

    /// Frames drawn so far.
    pub fn frame_index(&self) -> u64 {
        self.frame_index
    }

    pub fn should_quit(&self) -> bool {
        self.quit
    }

    pub fn last_screenshot(&self) -> Option<&Path> {
        self.last_screenshot.as_deref()
    }

    /// Draw calls issued by tiles and layers in the last frame, UI excluded.
    pub fn layer_draw_calls(&self) -> u64 {
        self.layer_draw_calls
    }

    pub fn set_view(&mut self, view: ViewState) {
        if view != self.view {
            self.view = view;
            self.dirty = true;
        }
    }

    pub fn handle(&mut self, event: InputEvent) {
        match event {
            InputEvent::MouseMove { x, y } => self.mouse = Some((x, y)),
            InputEvent::MouseLeave => self.mouse = None,
            InputEvent::Drag { dx, dy } => self.set_view(self.view.pan(dx, dy)),
            InputEvent::Scroll { steps } => self.set_view(self.view.zoom_by(steps.signum())),
            InputEvent::KeyRelease(key) => self.key(key),
            InputEvent::Resize { width, height } => {
                let v = ViewState::new(self.view.zoom, self.view.origin_wx, self.view.origin_wy, width, height);
                if (v.screen_w, v.screen_h) != (self.canvas.width(), self.canvas.height()) {
                    self.canvas = Canvas::new(v.screen_w, v.screen_h);
                }
                self.set_view(v);
            }
            InputEvent::Quit => self.quit = true,
        }
    }

    fn key(&mut self, key: Key) {
        let (w, h) = (self.view.screen_w as f64, self.view.screen_h as f64);
        match key {
            Key::Plus => self.set_view(self.view.zoom_by(1)),
            Key::Minus => self.set_view(self.view.zoom_by(-1)),
            Key::Left => self.set_view(self.view.pan(w * PAN_FRACTION, 0.0)),
            Key::Right => self.set_view(self.view.pan(-w * PAN_FRACTION, 0.0)),
            Key::Up => self.set_view(self.view.pan(0.0, h * PAN_FRACTION)),
            Key::Down => self.set_view(self.view.pan(0.0, -h * PAN_FRACTION)),
            Key::Escape => self.quit = true,
            Key::Char('P') => self.ui.request_screenshot(None),
            Key::Char(_) => {
                for layer in &mut self.layers {
                    layer.on_key_release(key, &self.view);
                }
            }
        }
    }

    /// Requests every visible tile and waits up to `timeout` for downloads.
    /// Returns false when some tile is still pending.
    pub fn prefetch_tiles(&self, timeout: Duration) -> bool {
        let Some(b) = &self.basemap else { return true };
        for coord in tiles_for_view(&self.view) {
            b.cache.request_tile(&b.provider, coord);
        }
        b.cache.wait_idle(timeout)
    }

    fn draw_tiles(&mut self) {
        let Some(b) = &self.basemap else { return };
        for coord in tiles_for_view(&self.view) {
            if let TileHandle::Ready(img) = b.cache.request_tile(&b.provider, coord) {
                let x = (coord.x as f64 * TILE_SIZE - self.view.origin_wx).round() as i64;
                let y = (coord.y as f64 * TILE_SIZE - self.view.origin_wy).round() as i64;
                self.canvas.draw_image(&img, x, y);
            }
        }
    }

    /// Draws one frame: invalidates layers if the view changed, then tiles,
    /// layers in order and the UI. Saves a screenshot if one was requested.
    pub fn frame(&mut self) -> Result<()> {
        if self.dirty {
            for layer in &mut self.layers {
                layer.invalidate(&self.view);
            }
            self.dirty = false;
        }
        self.canvas.clear(self.background);
        self.canvas.reset_draw_calls();
        self.draw_tiles();
        self.ui.clear_tooltip();
        let mut frame = Frame {
            canvas: &mut self.canvas,
            mouse: self.mouse,
            ui: &mut self.ui,
        };
        for layer in &mut self.layers {
            layer.draw(&self.view, &mut frame);
        }
        self.layer_draw_calls = self.canvas.draw_calls();
        self.ui.draw(&mut self.canvas);
        if let Some(path) = self.ui.take_screenshot_request() {
            let path = path.unwrap_or_else(|| {
                self.screenshot_dir
                    .join(format!("screenshot_{:06}.png", self.frame_index))
            });
            self.canvas.write_png(&path)?;
            log::info!("saved {}", path.display());
            self.last_screenshot = Some(path);
        }
        self.frame_index += 1;
        Ok(())
    }

    /// Saves the current canvas as a PNG.
    pub fn screenshot(&self, path: impl AsRef<Path>) -> Result<()> {
        self.canvas.write_png(path)
    }

    /// Opens a window and runs the frame loop until it is closed.
    #[cfg(feature = "window")]
    pub fn run(&mut self, title: &str) -> Result<()> {
        window::run(self, title)
    }

    #[cfg(not(feature = "window"))]
    pub fn run(&mut self, _title: &str) -> Result<()> {
        Err(crate::Error::Window("built without window support".into()))
    }
}
