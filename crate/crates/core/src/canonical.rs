//! Vertex labels, identifiers and the canonical form.
//!
//! A vertex label lists, for each compass slot `N..NW`, the length of the arc
//! in that slot, positive when the arc arrives and negative when it leaves.
//! The identifier of an embedding is its labels in row-major order and the
//! canonical form is the least identifier over the symmetry orbit, which is
//! generated by translations, the two reflections and the half turn.

use std::cmp::Ordering;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::embedding::{Direction, GroundEmbedding};
use crate::geometry::{Arc, GridPos, StepVector, TorusDims};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel(pub [i8; 8]);

impl VertexLabel {
    pub const EMPTY: VertexLabel = VertexLabel([0; 8]);

    pub fn entries(&self) -> [i8; 8] {
        self.0
    }

    pub fn in_degree(&self) -> usize {
        self.0.iter().filter(|&&a| a > 0).count()
    }

    pub fn out_degree(&self) -> usize {
        self.0.iter().filter(|&&a| a < 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.in_degree() == 2 && self.out_degree() == 2
    }

    /// Label of the image vertex under `t`.
    pub fn transformed(&self, t: Transform) -> VertexLabel {
        let mut out = [0i8; 8];
        for (i, &a) in self.0.iter().enumerate() {
            match t {
                Transform::Identity => out[i] = a,
                Transform::HReflect => out[(8 - i) % 8] = a,
                Transform::VReflect => out[(12 - i) % 8] = -a,
                Transform::Rot180 => out[(i + 4) % 8] = -a,
            }
        }
        VertexLabel(out)
    }

    /// Entrywise least label any completion of this (partial) label can reach.
    /// Empty slots are filled with the smallest value an arc could put there.
    pub fn completion_floor(&self) -> VertexLabel {
        // N, NE, NW only take arriving arcs; SE, SW only short leaving ones
        const FLOOR: [i8; 8] = [0, 0, -2, -1, -2, -1, -2, 0];
        let mut out = self.0;
        for (i, a) in out.iter_mut().enumerate() {
            if *a == 0 {
                *a = FLOOR[i];
            }
        }
        VertexLabel(out)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Row-major labels of an embedding, prefixed by its dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddingId {
    pub dims: TorusDims,
    pub labels: Vec<VertexLabel>,
}

impl EmbeddingId {
    /// Hex SHA-256 of the text form, used as a stable file stem.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for EmbeddingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.dims)?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transform {
    Identity,
    HReflect,
    VReflect,
    Rot180,
}

impl Transform {
    pub const ALL: [Transform; 4] = [
        Transform::Identity,
        Transform::HReflect,
        Transform::VReflect,
        Transform::Rot180,
    ];

    /// Image of a lattice point.
    pub fn apply_pos(self, p: GridPos, dims: TorusDims) -> GridPos {
        let (r, c) = (p.row as i64, p.col as i64);
        let (r, c) = match self {
            Transform::Identity => (r, c),
            Transform::HReflect => (r, -c),
            Transform::VReflect => (-r, c),
            Transform::Rot180 => (-r, -c),
        };
        crate::geometry::wrap(r, c, dims)
    }

    /// Image of an arc. The row-flipping transforms reverse the arc so that
    /// its step points downward again.
    pub fn apply_arc(self, a: &Arc, dims: TorusDims) -> Arc {
        let (r, c) = (a.origin.row as i64, a.origin.col as i64);
        let (dx, dy) = (a.step.dx(), a.step.dy());
        let (origin, step) = match self {
            Transform::Identity => ((r, c), (dx, dy)),
            Transform::HReflect => ((r, -c), (-dx, dy)),
            Transform::VReflect => ((-r - dy as i64, c + dx as i64), (-dx, dy)),
            Transform::Rot180 => ((-r - dy as i64, -c - dx as i64), (dx, dy)),
        };
        Arc::new(
            crate::geometry::wrap(origin.0, origin.1, dims),
            StepVector::new(step.0, step.1).expect("the step set is closed under mirroring dx"),
        )
    }
}

/// How the optional pruning test inside `valid_vertex` behaves.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum PruneRule {
    Off,
    /// Discard a branch once some completed vertex, under some symmetry,
    /// carries a label below the least label (0,0) can still end up with.
    /// Never discards a branch that could complete to a canonical embedding.
    #[default]
    Sound,
    /// Completed vertices must not carry a label below the label of a
    /// completed (0,0). Identity transform only.
    LiteralGreater,
    /// Completed vertices must not carry a label above the label of a
    /// completed (0,0). Not sound under ascending label order; kept only to
    /// study the reversed comparison.
    LiteralLess,
}

pub fn vertex_label(e: &GroundEmbedding, v: GridPos) -> VertexLabel {
    let mut out = [0i8; 8];
    for r in e.records(v) {
        let len = r.step.length() as i8;
        out[r.slot.index()] = match r.direction {
            Direction::Incoming => len,
            Direction::Outgoing => -len,
        };
    }
    VertexLabel(out)
}

pub fn labels(e: &GroundEmbedding) -> Vec<VertexLabel> {
    e.dims().positions().map(|v| vertex_label(e, v)).collect()
}

pub fn identifier(e: &GroundEmbedding) -> EmbeddingId {
    EmbeddingId {
        dims: e.dims(),
        labels: labels(e),
    }
}

pub fn transform(e: &GroundEmbedding, t: Transform) -> GroundEmbedding {
    let dims = e.dims();
    let mut out = GroundEmbedding::from_arcs(dims, e.arcs().map(|a| t.apply_arc(a, dims)))
        .expect("transforms are bijective on arcs");
    for (v, z) in e.zeta() {
        out.set_zeta(t.apply_pos(*v, dims), z.clone());
    }
    out
}

pub fn translate(e: &GroundEmbedding, drow: i64, dcol: i64) -> GroundEmbedding {
    let dims = e.dims();
    let mut out = GroundEmbedding::from_arcs(
        dims,
        e.arcs()
            .map(|a| Arc::new(a.origin.offset(drow, dcol, dims), a.step)),
    )
    .expect("translations are bijective on arcs");
    for (v, z) in e.zeta() {
        out.set_zeta(v.offset(drow, dcol, dims), z.clone());
    }
    out
}

/// Every identifier in the orbit of a labelling: each transform followed by
/// each translation.
fn orbit(labels: &[VertexLabel], dims: TorusDims) -> impl Iterator<Item = Vec<VertexLabel>> + '_ {
    Transform::ALL.into_iter().flat_map(move |t| {
        let mut moved = vec![VertexLabel::EMPTY; labels.len()];
        for (i, l) in labels.iter().enumerate() {
            let p = t.apply_pos(dims.pos_at(i), dims);
            moved[dims.index(p)] = l.transformed(t);
        }
        (0..dims.area()).map(move |s| {
            let shift = dims.pos_at(s);
            dims.positions()
                .map(|w| {
                    moved[dims.index(w.offset(-(shift.row as i64), -(shift.col as i64), dims))]
                })
                .collect()
        })
    })
}

pub fn canonical_id_of_labels(labels: &[VertexLabel], dims: TorusDims) -> EmbeddingId {
    let best = orbit(labels, dims)
        .min()
        .expect("the orbit contains the identity");
    EmbeddingId { dims, labels: best }
}

/// True when no orbit member is below the given labelling.
pub fn is_canonical_labels(labels: &[VertexLabel], dims: TorusDims) -> bool {
    orbit(labels, dims).all(|cand| cand.as_slice().cmp(labels) != Ordering::Less)
}

pub fn canonical_id(e: &GroundEmbedding) -> EmbeddingId {
    canonical_id_of_labels(&labels(e), e.dims())
}

pub fn is_canonical(e: &GroundEmbedding) -> bool {
    is_canonical_labels(&labels(e), e.dims())
}

/// Transformed embedding whose identifier is the canonical one.
pub fn canonical_representative(e: &GroundEmbedding) -> GroundEmbedding {
    let dims = e.dims();
    Transform::ALL
        .into_iter()
        .flat_map(|t| {
            let te = transform(e, t);
            dims.positions()
                .map(move |s| translate(&te, s.row as i64, s.col as i64))
                .collect::<Vec<_>>()
        })
        .min_by_key(identifier)
        .expect("orbit is non-empty")
}

/// Pruning test on a labelling in progress after vertex `v` changed.
/// `false` means discard the branch.
pub fn prune_labels(labels: &[VertexLabel], dims: TorusDims, v: GridPos, rule: PruneRule) -> bool {
    let corner = labels[0];
    match rule {
        PruneRule::Off => true,
        PruneRule::LiteralGreater | PruneRule::LiteralLess => {
            let lv = labels[dims.index(v)];
            if !lv.is_complete() || !corner.is_complete() {
                return true;
            }
            if rule == PruneRule::LiteralGreater {
                lv >= corner
            } else {
                lv <= corner
            }
        }
        PruneRule::Sound => {
            let floor = if corner.is_complete() {
                corner
            } else {
                corner.completion_floor()
            };
            let below = |l: &VertexLabel| Transform::ALL.iter().any(|&t| l.transformed(t) < floor);
            let lv = labels[dims.index(v)];
            if lv.is_complete() && below(&lv) {
                return false;
            }
            if dims.index(v) == 0 && corner.is_complete() {
                return !labels.iter().any(|l| l.is_complete() && below(l));
            }
            true
        }
    }
}

pub fn prune_predicate(e: &GroundEmbedding, v: GridPos, rule: PruneRule) -> bool {
    if rule == PruneRule::Off {
        return true;
    }
    prune_labels(&labels(e), e.dims(), v, rule)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(dx: i32, dy: i32) -> StepVector {
        StepVector::new(dx, dy).unwrap()
    }

    fn o() -> GridPos {
        GridPos { row: 0, col: 0 }
    }

    fn one_by_one(left: bool) -> GroundEmbedding {
        let dims = TorusDims::new(1, 1).unwrap();
        let arcs = if left {
            [Arc::new(o(), s(-1, 1)), Arc::new(o(), s(1, 0))]
        } else {
            [Arc::new(o(), s(1, 1)), Arc::new(o(), s(-1, 0))]
        };
        GroundEmbedding::from_arcs(dims, arcs).unwrap()
    }

    #[test]
    fn label_examples() {
        let e = one_by_one(true);
        assert_eq!(
            vertex_label(&e, o()),
            VertexLabel([0, 1, -1, 0, 0, -1, 1, 0])
        );
        let empty = GroundEmbedding::new(TorusDims::new(2, 2).unwrap());
        assert_eq!(vertex_label(&empty, o()), VertexLabel::EMPTY);
        let dims = TorusDims::new(2, 1).unwrap();
        let e = GroundEmbedding::from_arcs(dims, [Arc::new(GridPos { row: 1, col: 0 }, s(0, 2))])
            .unwrap();
        assert_eq!(vertex_label(&e, GridPos { row: 1, col: 0 }).0[0], 2);
    }

    #[test]
    fn reflection_gives_mirror() {
        let e = one_by_one(true);
        assert_eq!(transform(&e, Transform::VReflect), one_by_one(false));
        assert_eq!(transform(&e, Transform::HReflect), one_by_one(false));
        assert_eq!(transform(&e, Transform::Rot180), e);
    }

    #[test]
    fn mirror_pair_shares_canonical_id() {
        let a = one_by_one(true);
        let b = one_by_one(false);
        assert_eq!(canonical_id(&a), canonical_id(&b));
        assert_ne!(is_canonical(&a), is_canonical(&b));
    }

    #[test]
    fn empty_is_canonical() {
        assert!(is_canonical(&GroundEmbedding::new(
            TorusDims::new(2, 3).unwrap()
        )));
    }

    #[test]
    fn label_transform_matches_arc_transform() {
        let dims = TorusDims::new(3, 3).unwrap();
        let p = |r, c| GridPos { row: r, col: c };
        let e = GroundEmbedding::from_arcs(
            dims,
            [
                Arc::new(p(0, 0), s(0, 2)),
                Arc::new(p(1, 1), s(2, 0)),
                Arc::new(p(2, 2), s(-1, 1)),
                Arc::new(p(0, 1), s(1, 1)),
            ],
        )
        .unwrap();
        for t in Transform::ALL {
            let te = transform(&e, t);
            for v in dims.positions() {
                assert_eq!(
                    vertex_label(&te, t.apply_pos(v, dims)),
                    vertex_label(&e, v).transformed(t),
                    "{t:?} at {v}"
                );
            }
        }
    }

    #[test]
    fn group_laws() {
        let e = one_by_one(true);
        let dims = TorusDims::new(2, 3).unwrap();
        let e2 = GroundEmbedding::from_arcs(
            dims,
            [
                Arc::new(GridPos { row: 0, col: 0 }, s(1, 1)),
                Arc::new(GridPos { row: 1, col: 2 }, s(-2, 0)),
            ],
        )
        .unwrap();
        for x in [e, e2] {
            for t in Transform::ALL {
                assert_eq!(transform(&transform(&x, t), t), x);
            }
            assert_eq!(
                transform(&transform(&x, Transform::VReflect), Transform::HReflect),
                transform(&x, Transform::Rot180)
            );
        }
    }

    #[test]
    fn floor_is_below_every_completion() {
        let partial = VertexLabel([0, 1, 0, 0, 0, 0, 0, 0]);
        assert!(partial.completion_floor() <= VertexLabel([0, 1, -1, 0, 0, -1, 1, 0]));
        assert!(partial.completion_floor() <= partial);
    }

    #[test]
    fn hash_is_hex() {
        let id = canonical_id(&one_by_one(true));
        let h = id.content_hash();
        assert_eq!(h.len(), 64);
        assert!(h.chars().all(|c| c.is_ascii_hexdigit()));
        assert!(id.to_string().starts_with("1x1 ("));
    }
}
