//! Software rasterizer: a framebuffer canvas, a batching painter and a
//! bitmap font. The same canvas backs both the window and PNG export.

mod canvas;
pub mod earcut;
pub mod font;
mod painter;

pub use canvas::{point_pixels, write_png, Canvas, Sprite};
pub use painter::BatchPainter;
