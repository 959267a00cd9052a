mod common;

use terramap::app::{synthetic_points, BENCH_BBOX, BENCH_SIZE};
use terramap::layers::{DotLayer, DotOptions, Frame, Layer};
use terramap::projection::fit_view;
use terramap::render::{BatchPainter, Canvas};
use terramap::viewer::UiManager;
use terramap::BoundingBox;

const WHITE: [u8; 4] = [255, 255, 255, 255];

fn white(w: u32, h: u32) -> Canvas {
    let mut c = Canvas::new(w, h);
    c.clear(WHITE);
    c
}

#[test]
fn shared_triangle_edges_paint_each_pixel_once() {
    // Two half-transparent triangles tiling a rectangle: a double-painted
    // pixel would be darker and a gap would stay white.
    let mut canvas = white(40, 30);
    let mut p = BatchPainter::new();
    p.set_color([0, 0, 0, 128]);
    p.rect(5.3, 4.7, 23.9, 17.2);
    p.triangle([10.0, 25.0], [30.0, 25.0], [20.0, 29.5]);
    p.triangle([30.0, 25.0], [20.0, 29.5], [35.0, 29.8]);
    p.batch_draw(&mut canvas);
    let once = canvas.pixel(10, 10);
    assert_ne!(once, WHITE);
    for y in 0..30 {
        for x in 0..40 {
            let c = canvas.pixel(x, y);
            assert!(c == WHITE || c == once, "({x},{y}) = {c:?}");
        }
    }
    // Pixel centers inside [5.3, 29.2) x [4.7, 21.9).
    for y in 0..30u32 {
        for x in 0..40u32 {
            let (cx, cy) = (x as f64 + 0.5, y as f64 + 0.5);
            if cy < 24.0 {
                let inside = (5.3..29.2).contains(&cx) && (4.7..21.9).contains(&cy);
                assert_eq!(canvas.pixel(x, y) != WHITE, inside, "({x},{y})");
            }
        }
    }
}

#[test]
fn concave_fill_matches_point_in_polygon() {
    let ring = vec![[4.0, 4.0], [60.0, 8.0], [30.0, 22.0], [58.0, 44.0], [6.0, 40.0], [16.0, 22.5]];
    let mut canvas = white(64, 48);
    let mut p = BatchPainter::new();
    p.set_color([0, 0, 255, 255]);
    assert!(p.poly_fill(&ring));
    p.batch_draw(&mut canvas);
    let mut mismatches = 0;
    for y in 0..48u32 {
        for x in 0..64u32 {
            let inside = common::point_in_polygon(&ring, [x as f64 + 0.5, y as f64 + 0.5]);
            if (canvas.pixel(x, y) != WHITE) != inside {
                mismatches += 1;
            }
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn horizontal_line_covers_its_width() {
    let mut canvas = white(20, 10);
    let mut p = BatchPainter::new();
    p.set_color([255, 0, 0, 255]);
    p.line(2.0, 5.0, 18.0, 5.0, 2.0);
    p.batch_draw(&mut canvas);
    for y in 0..10 {
        for x in 0..20 {
            let hit = canvas.pixel(x, y) != WHITE;
            assert_eq!(hit, (2..18).contains(&x) && (4..6).contains(&y), "({x},{y})");
        }
    }
}

#[test]
fn one_draw_call_per_primitive_class() {
    let mut canvas = white(32, 32);
    let mut p = BatchPainter::new();
    p.points(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], 2.0);
    p.line(0.0, 0.0, 10.0, 10.0, 1.0);
    p.line(0.0, 10.0, 10.0, 0.0, 1.0);
    p.rect(1.0, 1.0, 5.0, 5.0);
    canvas.reset_draw_calls();
    p.batch_draw(&mut canvas);
    assert_eq!(canvas.draw_calls(), 3);
}

#[test]
fn nan_coordinates_are_dropped() {
    let mut p = BatchPainter::new();
    p.points(&[1.0, f64::NAN], &[1.0, 2.0], 2.0);
    p.line(f64::NAN, 0.0, 1.0, 1.0, 1.0);
    assert_eq!(p.point_count(), 1);
    assert_eq!(p.line_count(), 0);
}

#[test]
fn png_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut canvas = white(16, 8);
    let mut p = BatchPainter::new();
    p.set_color([10, 200, 30, 255]);
    p.rect(2.0, 2.0, 4.0, 4.0);
    p.batch_draw(&mut canvas);
    let path = dir.path().join("c.png");
    canvas.write_png(&path).unwrap();
    let back = image::open(&path).unwrap().to_rgba8();
    assert_eq!(back, canvas.read_pixels());
    assert_eq!(back.get_pixel(3, 3).0, [10, 200, 30, 255]);
}

/// Opaque single-color dots skip exact repeats; the picture must not change.
#[test]
fn overdraw_culling_is_pixel_exact() {
    let table = synthetic_points(200_000, 11);
    let bbox = BoundingBox::new(BENCH_BBOX.0, BENCH_BBOX.1, BENCH_BBOX.2, BENCH_BBOX.3).unwrap();
    let view = fit_view(&bbox, BENCH_SIZE.0, BENCH_SIZE.1);
    for size in [1.0, 2.0, 3.5] {
        let opts = DotOptions { point_size: size, color: terramap::layers::DotColor::Fixed([200, 0, 40, 255]), ..DotOptions::default() };
        let mut layer = DotLayer::new(&table, opts).unwrap();
        layer.invalidate(&view);
        assert!(layer.painter().point_count() < table.nrows(), "culling kept everything at size {size}");
        let mut culled = white(view.screen_w, view.screen_h);
        let mut ui = UiManager::new();
        layer.draw(&view, &mut Frame { canvas: &mut culled, mouse: None, ui: &mut ui });

        let (lats, lons) = table.latlon().unwrap();
        let (sx, sy) = view.lonlat_to_screen_batch(lons, lats);
        let mut raw = white(view.screen_w, view.screen_h);
        let mut p = BatchPainter::new();
        p.set_color([200, 0, 40, 255]);
        p.points(&sx, &sy, size);
        p.batch_draw(&mut raw);
        assert!(culled.raw() == raw.raw(), "size {size}");
    }
}
