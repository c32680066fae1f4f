//! Integer lattice and torus primitives.
//!
//! Rows grow downward (the direction of monotonicity), columns grow to the
//! right. All positions stored in a [`GridPos`] are already reduced modulo the
//! torus dimensions; arcs keep their intrinsic [`StepVector`] so that
//! displacement sums around circuits stay exact.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::LaceError;

/// Extent of the period parallelogram: `rows` is the meridional extent,
/// `cols` the longitudinal extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusDims {
    rows: u32,
    cols: u32,
}

impl TorusDims {
    pub fn new(rows: u32, cols: u32) -> Result<Self, LaceError> {
        if rows == 0 || cols == 0 {
            return Err(LaceError::InvalidDims { rows, cols });
        }
        Ok(TorusDims { rows, cols })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    /// Number of lattice points in the period parallelogram.
    pub fn area(&self) -> usize {
        self.rows as usize * self.cols as usize
    }

    /// Row-major index of a position.
    pub fn index(&self, p: GridPos) -> usize {
        p.row as usize * self.cols as usize + p.col as usize
    }

    pub fn pos_at(&self, index: usize) -> GridPos {
        GridPos {
            row: (index / self.cols as usize) as u32,
            col: (index % self.cols as usize) as u32,
        }
    }

    /// All positions in row-major order.
    pub fn positions(&self) -> impl Iterator<Item = GridPos> + '_ {
        (0..self.area()).map(move |i| self.pos_at(i))
    }
}

impl fmt::Display for TorusDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A lattice point of the torus, always stored wrapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPos {
    pub row: u32,
    pub col: u32,
}

impl GridPos {
    /// Wrapped position displaced by `(drow, dcol)`.
    pub fn offset(self, drow: i64, dcol: i64, dims: TorusDims) -> GridPos {
        wrap(self.row as i64 + drow, self.col as i64 + dcol, dims)
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Reduce an unwrapped coordinate pair onto the torus.
pub fn wrap(row: i64, col: i64, dims: TorusDims) -> GridPos {
    GridPos {
        row: row.rem_euclid(dims.rows as i64) as u32,
        col: col.rem_euclid(dims.cols as i64) as u32,
    }
}

/// The eight compass positions around a vertex, clockwise from north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    N = 0,
    NE = 1,
    E = 2,
    SE = 3,
    S = 4,
    SW = 5,
    W = 6,
    NW = 7,
}

impl Slot {
    pub const ALL: [Slot; 8] = [
        Slot::N,
        Slot::NE,
        Slot::E,
        Slot::SE,
        Slot::S,
        Slot::SW,
        Slot::W,
        Slot::NW,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Slot {
        Slot::ALL[i % 8]
    }

    /// Slot of the unit compass direction `(sign dx, sign dy)`.
    fn from_direction(dx: i32, dy: i32) -> Option<Slot> {
        Some(match (dx.signum(), dy.signum()) {
            (0, -1) => Slot::N,
            (1, -1) => Slot::NE,
            (1, 0) => Slot::E,
            (1, 1) => Slot::SE,
            (0, 1) => Slot::S,
            (-1, 1) => Slot::SW,
            (-1, 0) => Slot::W,
            (-1, -1) => Slot::NW,
            _ => return None,
        })
    }
}

/// One of the eight lace-path step vectors.
///
/// Ordering follows the listing `<-1,1> <0,1> <1,1> <0,2> <1,0> <-1,0> <2,0>
/// <-2,0>`; path sequences are ordered lexicographically on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StepVector {
    dx: i8,
    dy: i8,
}

impl StepVector {
    pub const ALL: [StepVector; 8] = [
        StepVector { dx: -1, dy: 1 },
        StepVector { dx: 0, dy: 1 },
        StepVector { dx: 1, dy: 1 },
        StepVector { dx: 0, dy: 2 },
        StepVector { dx: 1, dy: 0 },
        StepVector { dx: -1, dy: 0 },
        StepVector { dx: 2, dy: 0 },
        StepVector { dx: -2, dy: 0 },
    ];

    pub fn new(dx: i32, dy: i32) -> Result<StepVector, LaceError> {
        StepVector::ALL
            .iter()
            .copied()
            .find(|s| s.dx as i32 == dx && s.dy as i32 == dy)
            .ok_or(LaceError::InvalidStep { dx, dy })
    }

    pub fn dx(self) -> i32 {
        self.dx as i32
    }

    pub fn dy(self) -> i32 {
        self.dy as i32
    }

    /// Position of this vector in [`StepVector::ALL`].
    pub fn index(self) -> usize {
        StepVector::ALL
            .iter()
            .position(|&s| s == self)
            .expect("step vectors are only constructed from the fixed set")
    }

    pub fn from_index(i: usize) -> StepVector {
        StepVector::ALL[i]
    }

    pub fn is_horizontal(self) -> bool {
        self.dy == 0
    }

    /// Floor of the Euclidean length.
    pub fn length(self) -> u8 {
        step_length(self)
    }
}

impl PartialOrd for StepVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StepVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for StepVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

/// Which end of an arc a slot is read at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Origin,
    Head,
}

/// Compass slot occupied by an arc with this step at the given endpoint.
pub fn direction_slot(step: StepVector, endpoint: Endpoint) -> Slot {
    let (dx, dy) = match endpoint {
        Endpoint::Origin => (step.dx(), step.dy()),
        Endpoint::Head => (-step.dx(), -step.dy()),
    };
    Slot::from_direction(dx, dy).expect("lace steps are never zero")
}

/// `floor(sqrt(dx^2 + dy^2))` for a lace step: 1 for unit and diagonal steps,
/// 2 for the long vertical and horizontal steps.
pub fn step_length(step: StepVector) -> u8 {
    let sq = step.dx() * step.dx() + step.dy() * step.dy();
    let mut r = 0;
    while (r + 1) * (r + 1) <= sq {
        r += 1;
    }
    r as u8
}

/// A directed arc: a wrapped origin plus its intrinsic step vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub origin: GridPos,
    pub step: StepVector,
}

impl Arc {
    pub fn new(origin: GridPos, step: StepVector) -> Arc {
        Arc { origin, step }
    }

    pub fn head(&self, dims: TorusDims) -> GridPos {
        self.origin
            .offset(self.step.dy() as i64, self.step.dx() as i64, dims)
    }

    /// Lattice point strictly inside a length-2 arc, if any.
    pub fn midpoint(&self, dims: TorusDims) -> Option<GridPos> {
        if self.step.length() == 2 {
            Some(
                self.origin
                    .offset(self.step.dy() as i64 / 2, self.step.dx() as i64 / 2, dims),
            )
        } else {
            None
        }
    }

    /// Endpoints in universal-cover coordinates `(x = col, y = row)`.
    fn segment(&self, drow: i64, dcol: i64) -> Segment {
        let x = self.origin.col as i64 + dcol;
        let y = self.origin.row as i64 + drow;
        Segment {
            a: (x, y),
            b: (x + self.step.dx() as i64, y + self.step.dy() as i64),
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.origin, self.step)
    }
}

type Point = (i64, i64);

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: Point,
    b: Point,
}

fn orient(o: Point, p: Point, q: Point) -> i64 {
    (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
}

fn within_box(p: Point, s: &Segment) -> bool {
    s.a.0.min(s.b.0) <= p.0
        && p.0 <= s.a.0.max(s.b.0)
        && s.a.1.min(s.b.1) <= p.1
        && p.1 <= s.a.1.max(s.b.1)
}

impl Segment {
    fn is_endpoint(&self, p: Point) -> bool {
        p == self.a || p == self.b
    }

    /// True when `p` lies on the closed segment.
    fn contains(&self, p: Point) -> bool {
        orient(self.a, self.b, p) == 0 && within_box(p, self)
    }

    /// Two segments conflict when they meet anywhere other than at a point
    /// that is an endpoint of both.
    fn conflicts(&self, other: &Segment) -> bool {
        let d1 = orient(other.a, other.b, self.a);
        let d2 = orient(other.a, other.b, self.b);
        let d3 = orient(self.a, self.b, other.a);
        let d4 = orient(self.a, self.b, other.b);
        if d1 == 0 && d2 == 0 {
            // collinear: project on the axis the segments move along
            let axis = |p: Point| if self.a.0 != self.b.0 { p.0 } else { p.1 };
            let (lo_s, hi_s) = minmax(axis(self.a), axis(self.b));
            let (lo_o, hi_o) = minmax(axis(other.a), axis(other.b));
            return lo_s.max(lo_o) < hi_s.min(hi_o);
        }
        if (d1 > 0 && d2 < 0 || d1 < 0 && d2 > 0) && (d3 > 0 && d4 < 0 || d3 < 0 && d4 > 0) {
            return true;
        }
        [self.a, self.b]
            .iter()
            .any(|&p| other.contains(p) && !other.is_endpoint(p))
            || [other.a, other.b]
                .iter()
                .any(|&p| self.contains(p) && !self.is_endpoint(p))
    }
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Range of lattice translates `k` (in units of `period`) for which the
/// intervals `[a0, a1]` and `[b0 + k*period, b1 + k*period]` can overlap.
fn translate_range(a: (i64, i64), b: (i64, i64), period: i64) -> std::ops::RangeInclusive<i64> {
    let lo = (a.0 - b.1).div_euclid(period) - 1;
    let hi = (a.1 - b.0).div_euclid(period) + 1;
    lo..=hi
}

fn span(start: i64, delta: i64) -> (i64, i64) {
    minmax(start, start + delta)
}

/// Whether two arcs, drawn as straight segments in the universal cover,
/// meet anywhere other than at a shared vertex. Collinear overlap of positive
/// length counts as a crossing. When `a == b` only the nonzero translates of
/// the arc are compared, which detects length-2 arcs overlapping their own
/// copies on narrow tori.
pub fn arcs_cross(a: &Arc, b: &Arc, dims: TorusDims) -> bool {
    let sa = a.segment(0, 0);
    let rows = dims.rows() as i64;
    let cols = dims.cols() as i64;
    let ra = span(a.origin.row as i64, a.step.dy() as i64);
    let rb = span(b.origin.row as i64, b.step.dy() as i64);
    let ca = span(a.origin.col as i64, a.step.dx() as i64);
    let cb = span(b.origin.col as i64, b.step.dx() as i64);
    for k1 in translate_range(ra, rb, rows) {
        for k2 in translate_range(ca, cb, cols) {
            if a == b && k1 == 0 && k2 == 0 {
                continue;
            }
            if sa.conflicts(&b.segment(k1 * rows, k2 * cols)) {
                return true;
            }
        }
    }
    false
}

/// True if a length-2 arc overlaps one of its own translates, which makes it
/// unusable on this torus.
pub fn arc_self_overlaps(a: &Arc, dims: TorusDims) -> bool {
    arcs_cross(a, a, dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(r: u32, c: u32) -> TorusDims {
        TorusDims::new(r, c).unwrap()
    }

    fn arc(r: u32, c: u32, dx: i32, dy: i32) -> Arc {
        Arc::new(GridPos { row: r, col: c }, StepVector::new(dx, dy).unwrap())
    }

    #[test]
    fn wrap_examples() {
        assert_eq!(wrap(0, 0, dims(1, 1)), GridPos { row: 0, col: 0 });
        assert_eq!(wrap(2, 0, dims(2, 3)), GridPos { row: 0, col: 0 });
        assert_eq!(wrap(-1, -1, dims(2, 3)), GridPos { row: 1, col: 2 });
    }

    #[test]
    fn zero_dims_rejected() {
        assert!(TorusDims::new(0, 3).is_err());
        assert!(TorusDims::new(3, 0).is_err());
    }

    #[test]
    fn slots() {
        let s = StepVector::new(0, 1).unwrap();
        assert_eq!(direction_slot(s, Endpoint::Origin), Slot::S);
        assert_eq!(direction_slot(s, Endpoint::Head), Slot::N);
        let w = StepVector::new(-2, 0).unwrap();
        assert_eq!(direction_slot(w, Endpoint::Origin), Slot::W);
        assert_eq!(direction_slot(w, Endpoint::Head), Slot::E);
    }

    #[test]
    fn origin_and_head_slot_sides() {
        for s in StepVector::ALL {
            let o = direction_slot(s, Endpoint::Origin);
            let h = direction_slot(s, Endpoint::Head);
            assert!(matches!(
                o,
                Slot::E | Slot::W | Slot::S | Slot::SE | Slot::SW
            ));
            assert!(matches!(
                h,
                Slot::E | Slot::W | Slot::N | Slot::NE | Slot::NW
            ));
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(step_length(StepVector::new(1, 1).unwrap()), 1);
        assert_eq!(step_length(StepVector::new(0, 2).unwrap()), 2);
        assert_eq!(step_length(StepVector::new(-1, 0).unwrap()), 1);
        assert_eq!(step_length(StepVector::new(-2, 0).unwrap()), 2);
    }

    #[test]
    fn invalid_step() {
        assert!(StepVector::new(3, 0).is_err());
        assert!(StepVector::new(0, -1).is_err());
        assert!(StepVector::new(0, 0).is_err());
    }

    #[test]
    fn crossing_examples() {
        let d = dims(2, 2);
        assert!(arcs_cross(&arc(0, 0, 1, 1), &arc(0, 1, -1, 1), d));
        assert!(!arcs_cross(&arc(0, 0, 0, 1), &arc(0, 1, 0, 1), d));

        let d3 = dims(3, 3);
        // b ends on a's origin: shared endpoint only
        assert!(!arcs_cross(&arc(0, 0, 0, 2), &arc(0, 1, 2, 0), d3));
        // b ends on a's midpoint (1,0)
        assert!(arcs_cross(&arc(0, 0, 0, 2), &arc(1, 1, 2, 0), d3));
        // origin (1,2) puts b's midpoint at (1,0), inside a
        assert!(arcs_cross(&arc(0, 0, 0, 2), &arc(1, 2, 2, 0), d3));
    }

    #[test]
    fn long_arc_self_overlap() {
        assert!(arc_self_overlaps(&arc(0, 0, 2, 0), dims(1, 1)));
        assert!(!arc_self_overlaps(&arc(0, 0, 2, 0), dims(1, 2)));
        assert!(!arc_self_overlaps(&arc(0, 0, 1, 0), dims(1, 1)));
        assert!(!arc_self_overlaps(&arc(0, 0, 0, 2), dims(2, 1)));
    }

    #[test]
    fn endpoint_touching_is_not_a_crossing() {
        let d = dims(3, 3);
        assert!(!arcs_cross(&arc(0, 0, 1, 1), &arc(1, 1, 1, 1), d));
        assert!(!arcs_cross(&arc(0, 0, 1, 0), &arc(0, 1, 1, 0), d));
    }
}
