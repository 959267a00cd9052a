use super::predicates::orient2d;
use super::{dedup_points, Point};
use crate::{Error, Result};

/// Convex hull by Andrew's monotone chain.
///
/// Returns indices into `points` of the hull vertices in counterclockwise
/// order (y up). Points lying on a hull edge are not vertices. Fails when
/// fewer than three distinct points remain or all are collinear.
pub fn convex_hull(points: &[Point]) -> Result<Vec<usize>> {
    let (mut idx, _) = dedup_points(points);
    if idx.len() < 3 {
        return Err(Error::Degenerate(format!(
            "convex hull needs 3 distinct points, got {}",
            idx.len()
        )));
    }
    idx.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp(&points[j][0])
            .then(points[i][1].total_cmp(&points[j][1]))
    });

    let turn = |h: &[usize], p: usize| {
        orient2d(points[h[h.len() - 2]], points[h[h.len() - 1]], points[p])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &p in &idx {
        while lower.len() >= 2 && turn(&lower, p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &p in idx.iter().rev() {
        while upper.len() >= 2 && turn(&upper, p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::Degenerate("all points are collinear".into()));
    }
    Ok(lower)
}

/// Hull vertex coordinates, counterclockwise.
pub fn convex_hull_points(points: &[Point]) -> Result<Vec<Point>> {
    Ok(convex_hull(points)?.into_iter().map(|i| points[i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_its_own_hull() {
        let pts = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.len(), 3);
        let p: Vec<_> = h.iter().map(|&i| pts[i]).collect();
        assert!(orient2d(p[0], p[1], p[2]) > 0.0);
    }

    #[test]
    fn square_with_center() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0]];
        let mut h = convex_hull(&pts).unwrap();
        h.sort();
        assert_eq!(h, vec![0, 1, 2, 3]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(convex_hull(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]).is_err());
        assert!(convex_hull(&[[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]]).is_err());
    }
}
