//! Planar primitives and partial-edge (stub) geometry.
//!
//! Edges are straight segments parameterized by `s` in `[0, 1]`, with `s = 0`
//! at the source node and `s = 1` at the target node. A partial drawing keeps
//! the pieces `[0, alpha]` and `[beta, 1]` and omits the interior.

use serde::{Deserialize, Serialize};

use crate::error::{MedError, Result};

/// Tolerance for every degeneracy test in this module.
pub const EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }

    /// `s·b + (1−s)·a`.
    pub fn point_at(&self, s: f64) -> Point {
        point_at(self, s)
    }
}

/// Closed parameter range `[lo, hi]` along an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ParamInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(MedError::invalid(format!(
                "parameter interval [{lo}, {hi}] not within [0, 1]"
            )));
        }
        Ok(ParamInterval { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Strict (open-interval) membership.
    pub fn contains_open(&self, s: f64) -> bool {
        self.lo < s && s < self.hi
    }
}

/// The drawn portion of an edge: either the whole edge or a pair of stubs.
#[derive(Debug, Clone, PartialEq)]
pub struct StubSet {
    pub pieces: Vec<(Segment, ParamInterval)>,
}

impl StubSet {
    pub fn is_complete(&self) -> bool {
        self.pieces.len() == 1
    }

    pub fn drawn_length(&self) -> f64 {
        self.pieces.iter().map(|(seg, _)| seg.length()).sum()
    }

    pub fn covers(&self, s: f64) -> bool {
        self.pieces.iter().any(|(_, iv)| iv.lo <= s && s <= iv.hi)
    }
}

/// A proper crossing of two segment interiors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingPoint {
    pub u1: f64,
    pub u2: f64,
    pub p: Point,
}

pub fn point_at(e: &Segment, s: f64) -> Point {
    Point::new(s * e.b.x + (1.0 - s) * e.a.x, s * e.b.y + (1.0 - s) * e.a.y)
}

/// Proper intersection of two segments, if their interiors cross.
///
/// Contact at an endpoint of either segment (parameter within [`EPSILON`] of
/// 0 or 1) is not a crossing, so edges sharing a node never cross. Collinear
/// segments that overlap along a positive length are an error.
pub fn segment_intersection(s1: &Segment, s2: &Segment) -> Result<Option<CrossingPoint>> {
    let d1 = s1.b.sub(s1.a);
    let d2 = s2.b.sub(s2.a);
    let w = s2.a.sub(s1.a);
    let denom = d1.cross(d2);
    let (n1, n2) = (d1.norm(), d2.norm());

    if denom.abs() <= EPSILON * n1 * n2 {
        // Parallel: only a collinear overlap matters.
        let off_line = d1.cross(w).abs() / n1;
        if off_line > EPSILON * n1.max(n2) {
            return Ok(None);
        }
        let len2 = d1.dot(d1);
        let t0 = w.dot(d1) / len2;
        let t1 = s2.b.sub(s1.a).dot(d1) / len2;
        let lo = t0.min(t1).max(0.0);
        let hi = t0.max(t1).min(1.0);
        if hi - lo > EPSILON {
            return Err(MedError::CollinearSegments);
        }
        return Ok(None);
    }

    let u1 = w.cross(d2) / denom;
    let u2 = w.cross(d1) / denom;
    let interior = |u: f64| u > EPSILON && u < 1.0 - EPSILON;
    if !interior(u1) || !interior(u2) {
        return Ok(None);
    }
    let p1 = point_at(s1, u1);
    let p2 = point_at(s2, u2);
    let p = Point::new(0.5 * (p1.x + p2.x), 0.5 * (p1.y + p2.y));
    Ok(Some(CrossingPoint { u1, u2, p }))
}

/// Partial drawing of an edge with partial-edge parameters `alpha`, `beta`.
///
/// For `alpha < beta` the pieces `[0, alpha]` and `[beta, 1]` remain; otherwise
/// the complete edge is drawn.
pub fn gamma(e: &Segment, alpha: f64, beta: f64) -> Result<StubSet> {
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) {
        return Err(MedError::invalid(format!(
            "partial edge parameters ({alpha}, {beta}) outside [0, 1]"
        )));
    }
    if alpha >= beta {
        return Ok(StubSet {
            pieces: vec![(*e, ParamInterval { lo: 0.0, hi: 1.0 })],
        });
    }
    let head = Segment::new(e.a, point_at(e, alpha));
    let tail = Segment::new(point_at(e, beta), e.b);
    Ok(StubSet {
        pieces: vec![
            (head, ParamInterval { lo: 0.0, hi: alpha }),
            (tail, ParamInterval { lo: beta, hi: 1.0 }),
        ],
    })
}

/// The region `(delta, 1 − delta)` left undrawn by a symmetric drawing with
/// stub-edge ratio `delta`.
pub fn blank_area(delta: f64) -> Result<ParamInterval> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(MedError::invalid(format!("delta {delta} outside [0, 1/2]")));
    }
    Ok(ParamInterval {
        lo: delta,
        hi: 1.0 - delta,
    })
}
