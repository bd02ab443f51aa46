//! Plane and line primitives shared by every module: points, closed
//! intervals, axes-parallel rectangles, and interval merging.

use serde::{Deserialize, Serialize};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn scale(self, k: f64) -> Point {
        Point::new(k * self.x, k * self.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// A closed interval `[lo, hi]` on the line. `lo <= hi` always.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval bounds out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Degenerate interval `[t, t]`.
    pub fn point(t: f64) -> Self {
        Interval { lo: t, hi: t }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Length of the overlap with `other`; zero when disjoint or touching.
    pub fn overlap_len(&self, other: &Interval) -> f64 {
        (self.hi.min(other.hi) - self.lo.max(other.lo)).max(0.0)
    }

    /// Distance from `t` to the interval; zero when contained.
    pub fn distance_to(&self, t: f64) -> f64 {
        if t < self.lo {
            self.lo - t
        } else if t > self.hi {
            t - self.hi
        } else {
            0.0
        }
    }

    /// Distance between two intervals; zero when they intersect.
    pub fn gap_to(&self, other: &Interval) -> f64 {
        (other.lo - self.hi).max(self.lo - other.hi).max(0.0)
    }

    /// Image under the affine map `t -> ratio * t + offset` (ratio > 0).
    pub fn map(&self, ratio: f64, offset: f64) -> Interval {
        Interval::new(ratio * self.lo + offset, ratio * self.hi + offset)
    }
}

/// Sorts intervals by left endpoint and merges every pair closer than
/// `gap_tol` (touching intervals merge at `gap_tol = 0`). Returns a
/// disjoint, sorted list.
pub fn merge_intervals(mut intervals: Vec<Interval>, gap_tol: f64) -> Vec<Interval> {
    if intervals.is_empty() {
        return intervals;
    }
    intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        match merged.last_mut() {
            Some(last) if iv.lo <= last.hi + gap_tol => {
                last.hi = last.hi.max(iv.hi);
            }
            _ => merged.push(iv),
        }
    }
    merged
}

/// Total length of a disjoint interval list.
pub fn union_length(disjoint: &[Interval]) -> f64 {
    disjoint.iter().map(Interval::len).sum()
}

/// An axes-parallel rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        debug_assert!(x0 <= x1 && y0 <= y1, "rect bounds out of order");
        Rect { x0, x1, y0, y1 }
    }

    pub fn from_intervals(x: Interval, y: Interval) -> Self {
        Rect::new(x.lo, x.hi, y.lo, y.hi)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    pub fn x_interval(&self) -> Interval {
        Interval::new(self.x0, self.x1)
    }

    pub fn y_interval(&self) -> Interval {
        Interval::new(self.y0, self.y1)
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x0 <= other.x0 && other.x1 <= self.x1 && self.y0 <= other.y0 && other.y1 <= self.y1
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.x_interval().intersects(&other.x_interval())
            && self.y_interval().intersects(&other.y_interval())
    }

    /// Grows the rectangle by `margin` on every side.
    pub fn inflate(&self, margin: f64) -> Rect {
        Rect::new(
            self.x0 - margin,
            self.x1 + margin,
            self.y0 - margin,
            self.y1 + margin,
        )
    }

    /// Euclidean distance between two rectangles; zero when they intersect.
    pub fn distance_to(&self, other: &Rect) -> f64 {
        let dx = self.x_interval().gap_to(&other.x_interval());
        let dy = self.y_interval().gap_to(&other.y_interval());
        dx.hypot(dy)
    }

    /// Smallest rectangle containing both.
    pub fn hull(&self, other: &Rect) -> Rect {
        Rect::new(
            self.x0.min(other.x0),
            self.x1.max(other.x1),
            self.y0.min(other.y0),
            self.y1.max(other.y1),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_overlap_and_gap() {
        let a = Interval::new(0.0, 1.0);
        let b = Interval::new(0.5, 2.0);
        let c = Interval::new(3.0, 4.0);
        assert_eq!(a.overlap_len(&b), 0.5);
        assert_eq!(a.overlap_len(&c), 0.0);
        assert_eq!(a.gap_to(&c), 2.0);
        assert_eq!(a.gap_to(&b), 0.0);
    }

    #[test]
    fn merge_handles_touching_and_nested() {
        let v = vec![
            Interval::new(0.0, 1.0),
            Interval::new(1.0, 2.0),
            Interval::new(0.2, 0.4),
            Interval::new(3.0, 4.0),
        ];
        let m = merge_intervals(v, 0.0);
        assert_eq!(m, vec![Interval::new(0.0, 2.0), Interval::new(3.0, 4.0)]);
        assert_eq!(union_length(&m), 3.0);
    }

    #[test]
    fn rect_distance_is_euclidean() {
        let a = Rect::new(0.0, 1.0, 0.0, 1.0);
        let b = Rect::new(4.0, 5.0, 5.0, 6.0);
        assert!((a.distance_to(&b) - 5.0).abs() < 1e-15);
        let c = Rect::new(0.5, 2.0, 0.5, 2.0);
        assert_eq!(a.distance_to(&c), 0.0);
    }
}
