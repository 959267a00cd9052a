use minifb::{KeyRepeat, MouseButton, MouseMode, Window, WindowOptions};

use super::{InputEvent, Key, Viewer};
use crate::{Error, Result};

fn map_key(k: minifb::Key) -> Option<Key> {
    use minifb::Key as K;
    let key = match k {
        K::Equal | K::NumPadPlus => Key::Plus,
        K::Minus | K::NumPadMinus => Key::Minus,
        K::Left => Key::Left,
        K::Right => Key::Right,
        K::Up => Key::Up,
        K::Down => Key::Down,
        K::Escape => Key::Escape,
        K::Space => Key::Char(' '),
        other => {
            let code = other as u32;
            if (K::A as u32..=K::Z as u32).contains(&code) {
                Key::Char((b'A' + (code - K::A as u32) as u8) as char)
            } else if (K::Key0 as u32..=K::Key9 as u32).contains(&code) {
                Key::Char((b'0' + (code - K::Key0 as u32) as u8) as char)
            } else {
                return None;
            }
        }
    };
    Some(key)
}

pub(super) fn run(viewer: &mut Viewer, title: &str) -> Result<()> {
    let (w, h) = (viewer.view.screen_w as usize, viewer.view.screen_h as usize);
    let mut window = Window::new(
        title,
        w,
        h,
        WindowOptions {
            resize: true,
            ..WindowOptions::default()
        },
    )
    .map_err(|e| Error::Window(e.to_string()))?;
    window.set_target_fps(60);

    let mut buffer: Vec<u32> = Vec::new();
    let mut last_mouse: Option<(f32, f32)> = None;
    while window.is_open() && !viewer.should_quit() {
        let (ww, wh) = window.get_size();
        if (ww as u32, wh as u32) != (viewer.canvas.width(), viewer.canvas.height()) && ww > 0 && wh > 0 {
            viewer.handle(InputEvent::Resize {
                width: ww as u32,
                height: wh as u32,
            });
        }
        match window.get_mouse_pos(MouseMode::Discard) {
            Some((mx, my)) => {
                if window.get_mouse_down(MouseButton::Left) {
                    if let Some((lx, ly)) = last_mouse {
                        if (lx, ly) != (mx, my) {
                            viewer.handle(InputEvent::Drag {
                                dx: (mx - lx) as f64,
                                dy: (my - ly) as f64,
                            });
                        }
                    }
                }
                viewer.handle(InputEvent::MouseMove {
                    x: mx as f64,
                    y: my as f64,
                });
                last_mouse = Some((mx, my));
            }
            None => {
                viewer.handle(InputEvent::MouseLeave);
                last_mouse = None;
            }
        }
        if let Some((_, dy)) = window.get_scroll_wheel() {
            if dy != 0.0 {
                viewer.handle(InputEvent::Scroll {
                    steps: if dy > 0.0 { 1 } else { -1 },
                });
            }
        }
        let _ = window.get_keys_pressed(KeyRepeat::No);
        for k in window.get_keys_released() {
            if let Some(key) = map_key(k) {
                viewer.handle(InputEvent::KeyRelease(key));
            }
        }

        viewer.frame()?;
        let canvas = &viewer.canvas;
        buffer.clear();
        buffer.extend(
            canvas
                .raw()
                .chunks_exact(4)
                .map(|p| (p[0] as u32) << 16 | (p[1] as u32) << 8 | p[2] as u32),
        );
        window
            .update_with_buffer(&buffer, canvas.width() as usize, canvas.height() as usize)
            .map_err(|e| Error::Window(e.to_string()))?;
    }
    Ok(())
}
