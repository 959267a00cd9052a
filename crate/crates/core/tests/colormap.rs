use std::collections::HashSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use terramap::colormap::{ColorMap, Scale};
use terramap::geometry::{kde_grid, KdeParams, Rect};

fn all_maps() -> Vec<ColorMap> {
    ColorMap::names()
        .flat_map(|n| [ColorMap::new(n).unwrap(), ColorMap::new(&format!("{n}_r")).unwrap()])
        .collect()
}

fn rgb(c: [u8; 3]) -> [u8; 4] {
    [c[0], c[1], c[2], 255]
}

#[test]
fn endpoints_hit_first_and_last_control_points() {
    for cmap in all_maps() {
        let table = cmap.control_points();
        for scale in Scale::ALL {
            for max in [1e-6, 1.0, 100.0, 3.7e9] {
                assert_eq!(cmap.to_color(0.0, max, scale).unwrap(), rgb(table[0]), "{} {scale}", cmap.name());
                assert_eq!(
                    cmap.to_color(max, max, scale).unwrap(),
                    rgb(*table.last().unwrap()),
                    "{} {scale}",
                    cmap.name()
                );
            }
        }
    }
}

#[test]
fn out_of_range_values_clamp() {
    for cmap in all_maps() {
        for scale in Scale::ALL {
            assert_eq!(cmap.to_color(-5.0, 10.0, scale).unwrap(), cmap.to_color(0.0, 10.0, scale).unwrap());
            assert_eq!(cmap.to_color(50.0, 10.0, scale).unwrap(), cmap.to_color(10.0, 10.0, scale).unwrap());
        }
    }
}

#[test]
fn reversed_map_mirrors() {
    for name in ColorMap::names() {
        let (f, r) = (ColorMap::new(name).unwrap(), ColorMap::new(&format!("{name}_r")).unwrap());
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            let (a, b) = (f.at(t), r.at(1.0 - t));
            for k in 0..3 {
                assert!((a[k] as i32 - b[k] as i32).abs() <= 1, "{name} t={t}");
            }
        }
    }
}

#[test]
fn rejects_bad_arguments() {
    let cmap = ColorMap::new("hot").unwrap();
    assert!(ColorMap::new("nope").is_err());
    assert!(cmap.to_color(1.0, 0.0, Scale::Lin).is_err());
    assert!(cmap.to_color(1.0, f64::INFINITY, Scale::Lin).is_err());
    assert!(cmap.to_color(f64::NAN, 1.0, Scale::Lin).is_err());
    assert!(cmap.clone().with_levels(0).is_err());
}

#[test]
fn ten_levels_give_at_most_ten_colors() {
    let mut rng = StdRng::seed_from_u64(7);
    for cmap in all_maps() {
        let cmap = cmap.with_levels(10).unwrap();
        for scale in Scale::ALL {
            let distinct: HashSet<[u8; 4]> = (0..10_000)
                .map(|_| cmap.to_color(rng.gen_range(0.0..=1.0), 1.0, scale).unwrap())
                .collect();
            assert!(distinct.len() <= 10, "{} {scale}: {}", cmap.name(), distinct.len());
        }
    }
}

#[test]
fn hottest_cell_is_the_same_under_every_scale() {
    let mut rng = StdRng::seed_from_u64(3);
    let xs: Vec<f64> = (0..400).map(|_| rng.gen_range(10.0..50.0f64)).collect();
    let ys: Vec<f64> = (0..400).map(|_| 10.0 + rng.gen_range(0.0..40.0f64).powf(0.7) * 3.0).collect();
    let mut argmax = HashSet::new();
    for scaling in Scale::ALL {
        let params = KdeParams { bw: (3.0, 3.0), cell_px: 1.0, cut_below: None, clip_above: None, scaling };
        let g = kde_grid(&xs, &ys, &params, Rect::new(0.0, 0.0, 60.0, 60.0)).unwrap();
        let best = g.values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        argmax.insert(best);
        let cmap = ColorMap::new("hot").unwrap();
        assert_eq!(cmap.to_color(g.values[best], g.max(), scaling).unwrap(), rgb(*cmap.control_points().last().unwrap()));
    }
    assert_eq!(argmax.len(), 1);
}

proptest! {
    #[test]
    fn scales_preserve_order(a in 0.0f64..1e6, b in 0.0f64..1e6, max in 1.0f64..1e6) {
        let (lo, hi) = if a <= b { (a.min(max), b.min(max)) } else { (b.min(max), a.min(max)) };
        for scale in Scale::ALL {
            let (tl, th) = (scale.apply(lo, max), scale.apply(hi, max));
            prop_assert!(tl <= th);
            prop_assert!((0.0..=1.0).contains(&tl) && (0.0..=1.0).contains(&th));
        }
    }

    #[test]
    fn alpha_is_uniform(alpha in 0u8..=255, v in 0.0f64..10.0) {
        for cmap in all_maps() {
            let c = cmap.with_alpha(alpha).to_color(v, 10.0, Scale::Sqrt).unwrap();
            prop_assert_eq!(c[3], alpha);
        }
    }
}
