use std::collections::HashMap;

use crate::geometry::Rect;

pub const DEFAULT_BUCKET_PX: f64 = 64.0;

/// Screen rectangles with attached payloads (usually tooltip text or a row
/// index), bucketed on a square grid so a point query only inspects the
/// rectangles overlapping its bucket.
#[derive(Debug, Clone)]
pub struct HotspotIndex<T = String> {
    cell: f64,
    rects: Vec<(Rect, T)>,
    buckets: HashMap<(i64, i64), Vec<u32>>,
}

impl<T> Default for HotspotIndex<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> HotspotIndex<T> {
    pub fn new() -> Self {
        Self::with_bucket_size(DEFAULT_BUCKET_PX)
    }

    pub fn with_bucket_size(cell_px: f64) -> Self {
        assert!(cell_px > 0.0, "bucket size must be positive");
        HotspotIndex {
            cell: cell_px,
            rects: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn clear(&mut self) {
        self.rects.clear();
        self.buckets.clear();
    }

    /// Registers `rect`; later registrations are on top. Rectangles with
    /// non-finite or non-positive extents are ignored.
    pub fn add(&mut self, rect: Rect, payload: T) {
        let ok = [rect.x, rect.y, rect.w, rect.h].iter().all(|v| v.is_finite())
            && rect.w > 0.0
            && rect.h > 0.0;
        if !ok {
            return;
        }
        let id = self.rects.len() as u32;
        let (bx0, by0) = self.bucket(rect.x, rect.y);
        let (bx1, by1) = self.bucket(rect.x + rect.w, rect.y + rect.h);
        for by in by0..=by1 {
            for bx in bx0..=bx1 {
                self.buckets.entry((bx, by)).or_default().push(id);
            }
        }
        self.rects.push((rect, payload));
    }

    /// Centered square of side `size` around `(x, y)`.
    pub fn add_centered(&mut self, x: f64, y: f64, size: f64, payload: T) {
        self.add(Rect::new(x - size / 2.0, y - size / 2.0, size, size), payload);
    }

    fn bucket(&self, x: f64, y: f64) -> (i64, i64) {
        ((x / self.cell).floor() as i64, (y / self.cell).floor() as i64)
    }

    /// Payload of the topmost rectangle containing `(x, y)`.
    pub fn query(&self, x: f64, y: f64) -> Option<&T> {
        if !(x.is_finite() && y.is_finite()) {
            return None;
        }
        let ids = self.buckets.get(&self.bucket(x, y))?;
        ids.iter()
            .rev()
            .map(|&id| &self.rects[id as usize])
            .find(|(r, _)| r.contains([x, y]))
            .map(|(_, p)| p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Rect, T)> {
        self.rects.iter()
    }
}
