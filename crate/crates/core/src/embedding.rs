//! The toroidal ground embedding under construction.
//!
//! Each vertex keeps the slot records of the arcs touching it; the arc set is
//! kept alongside as a sorted view. Slot collisions and degree overflow can be
//! represented (files read from disk may contain them) but [`add_path`]
//! never produces them.
//!
//! [`add_path`]: GroundEmbedding::add_path

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::ActionSequence;
use crate::canonical::{prune_predicate, PruneRule};
use crate::error::LaceError;
use crate::geometry::{
    arc_self_overlaps, arcs_cross, direction_slot, Arc, Endpoint, GridPos, Slot, StepVector,
    TorusDims,
};
use crate::path::LacePath;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Incoming,
    Outgoing,
}

/// One arc end occupying a compass slot of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlotRecord {
    pub slot: Slot,
    pub direction: Direction,
    pub step: StepVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundEmbedding {
    dims: TorusDims,
    vertices: Vec<Vec<SlotRecord>>,
    arcs: BTreeSet<Arc>,
    zeta: BTreeMap<GridPos, ActionSequence>,
}

/// Which intermediate test rejected an arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectionKind {
    SlotConflict(Slot),
    DegreeOverflow(Direction),
    Crossing { arc: Arc, other: Arc },
    CanonicalPrune,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub kind: RejectionKind,
    pub vertex: GridPos,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RejectionKind::SlotConflict(s) => write!(f, "slot {s:?} used twice at {}", self.vertex),
            RejectionKind::DegreeOverflow(Direction::Incoming) => {
                write!(f, "more than 2 incoming arcs at {}", self.vertex)
            }
            RejectionKind::DegreeOverflow(Direction::Outgoing) => {
                write!(f, "more than 2 outgoing arcs at {}", self.vertex)
            }
            RejectionKind::Crossing { arc, other } => {
                write!(f, "arc {arc} crosses {other} at vertex {}", self.vertex)
            }
            RejectionKind::CanonicalPrune => write!(f, "canonical pruning at {}", self.vertex),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AddPathError {
    Invalid(LaceError),
    Rejected(Rejection),
}

impl fmt::Display for AddPathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AddPathError::Invalid(e) => write!(f, "{e}"),
            AddPathError::Rejected(r) => write!(f, "{r}"),
        }
    }
}

impl std::error::Error for AddPathError {}

/// Why an embedding is not a complete solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingFailure {
    NoArcs,
    Degree {
        vertex: GridPos,
        incoming: usize,
        outgoing: usize,
    },
    Disconnected {
        components: usize,
    },
}

impl fmt::Display for EmbeddingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingFailure::NoArcs => f.write_str("embedding has no arcs"),
            EmbeddingFailure::Degree {
                vertex,
                incoming,
                outgoing,
            } => write!(f, "vertex {vertex} is {incoming}-in/{outgoing}-out"),
            EmbeddingFailure::Disconnected { components } => {
                write!(f, "{components} connected components")
            }
        }
    }
}

impl GroundEmbedding {
    /// An embedding with every lattice point isolated.
    pub fn new(dims: TorusDims) -> GroundEmbedding {
        GroundEmbedding {
            dims,
            vertices: vec![Vec::new(); dims.area()],
            arcs: BTreeSet::new(),
            zeta: BTreeMap::new(),
        }
    }

    /// Build from an arc list, without any validity checks beyond
    /// duplicate rejection.
    pub fn from_arcs<I: IntoIterator<Item = Arc>>(
        dims: TorusDims,
        arcs: I,
    ) -> Result<GroundEmbedding, Arc> {
        let mut e = GroundEmbedding::new(dims);
        for arc in arcs {
            e.insert_arc(arc)?;
        }
        Ok(e)
    }

    pub fn dims(&self) -> TorusDims {
        self.dims
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.arcs.iter()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn contains_arc(&self, arc: &Arc) -> bool {
        self.arcs.contains(arc)
    }

    pub fn records(&self, v: GridPos) -> &[SlotRecord] {
        &self.vertices[self.dims.index(v)]
    }

    pub fn in_degree(&self, v: GridPos) -> usize {
        self.count(v, Direction::Incoming)
    }

    pub fn out_degree(&self, v: GridPos) -> usize {
        self.count(v, Direction::Outgoing)
    }

    fn count(&self, v: GridPos, d: Direction) -> usize {
        self.records(v).iter().filter(|r| r.direction == d).count()
    }

    pub fn is_isolated(&self, v: GridPos) -> bool {
        self.records(v).is_empty()
    }

    /// Positions carrying at least one arc, row-major.
    pub fn active_vertices(&self) -> Vec<GridPos> {
        self.dims
            .positions()
            .filter(|&v| !self.is_isolated(v))
            .collect()
    }

    pub fn zeta(&self) -> &BTreeMap<GridPos, ActionSequence> {
        &self.zeta
    }

    pub fn set_zeta(&mut self, v: GridPos, actions: ActionSequence) {
        self.zeta.insert(v, actions);
    }

    /// Record an arc at both endpoints. Only exact duplicates are refused.
    pub fn insert_arc(&mut self, arc: Arc) -> Result<(), Arc> {
        if !self.arcs.insert(arc) {
            return Err(arc);
        }
        let head = arc.head(self.dims);
        self.push_record(
            arc.origin,
            SlotRecord {
                slot: direction_slot(arc.step, Endpoint::Origin),
                direction: Direction::Outgoing,
                step: arc.step,
            },
        );
        self.push_record(
            head,
            SlotRecord {
                slot: direction_slot(arc.step, Endpoint::Head),
                direction: Direction::Incoming,
                step: arc.step,
            },
        );
        Ok(())
    }

    fn push_record(&mut self, v: GridPos, rec: SlotRecord) {
        let list = &mut self.vertices[self.dims.index(v)];
        let at = list.partition_point(|r| r <= &rec);
        list.insert(at, rec);
    }

    /// Lay `path` with its root in column `start_col`, validating each arc at
    /// both endpoints as it goes. On failure `self` is left untouched.
    pub fn add_path(
        &mut self,
        path: &LacePath,
        start_col: u32,
        prune: PruneRule,
    ) -> Result<(), AddPathError> {
        if path.height() != self.dims.rows() {
            return Err(AddPathError::Invalid(LaceError::HeightMismatch {
                path: path.height(),
                rows: self.dims.rows(),
            }));
        }
        if start_col >= self.dims.cols() {
            return Err(AddPathError::Invalid(LaceError::ColumnOutOfRange {
                col: start_col,
                cols: self.dims.cols(),
            }));
        }
        let mut work = self.clone();
        for arc in path.arcs(self.dims, start_col) {
            if arc_self_overlaps(&arc, self.dims) {
                return Err(AddPathError::Rejected(Rejection {
                    kind: RejectionKind::Crossing { arc, other: arc },
                    vertex: arc.origin,
                }));
            }
            let vertex = arc.origin;
            if work.insert_arc(arc).is_err() {
                return Err(AddPathError::Rejected(Rejection {
                    kind: RejectionKind::SlotConflict(direction_slot(arc.step, Endpoint::Origin)),
                    vertex,
                }));
            }
            work.valid_vertex(vertex, prune)
                .map_err(AddPathError::Rejected)?;
            work.valid_vertex(arc.head(self.dims), prune)
                .map_err(AddPathError::Rejected)?;
        }
        *self = work;
        Ok(())
    }

    /// Intermediate solvability tests for one vertex: degree at most
    /// 2-in/2-out, one arc per slot, no arc at `v` crossing any other arc,
    /// and the optional canonical pruning predicate.
    pub fn valid_vertex(&self, v: GridPos, prune: PruneRule) -> Result<(), Rejection> {
        let records = self.records(v);
        for d in [Direction::Incoming, Direction::Outgoing] {
            if records.iter().filter(|r| r.direction == d).count() > 2 {
                return Err(Rejection {
                    kind: RejectionKind::DegreeOverflow(d),
                    vertex: v,
                });
            }
        }
        for pair in records.windows(2) {
            if pair[0].slot == pair[1].slot {
                return Err(Rejection {
                    kind: RejectionKind::SlotConflict(pair[0].slot),
                    vertex: v,
                });
            }
        }
        for arc in self.arcs_at(v) {
            for other in &self.arcs {
                if *other != arc && arcs_cross(&arc, other, self.dims) {
                    return Err(Rejection {
                        kind: RejectionKind::Crossing { arc, other: *other },
                        vertex: v,
                    });
                }
            }
        }
        if !prune_predicate(self, v, prune) {
            return Err(Rejection {
                kind: RejectionKind::CanonicalPrune,
                vertex: v,
            });
        }
        Ok(())
    }

    /// Structural check of the whole embedding: [`valid_vertex`] at every
    /// vertex (without pruning) plus self-overlap of long arcs.
    ///
    /// [`valid_vertex`]: GroundEmbedding::valid_vertex
    pub fn structural_check(&self) -> Result<(), Rejection> {
        for arc in &self.arcs {
            if arc_self_overlaps(arc, self.dims) {
                return Err(Rejection {
                    kind: RejectionKind::Crossing {
                        arc: *arc,
                        other: *arc,
                    },
                    vertex: arc.origin,
                });
            }
        }
        for v in self.dims.positions() {
            self.valid_vertex(v, PruneRule::Off)?;
        }
        Ok(())
    }

    /// Arcs with `v` as origin or head, reconstructed from the slot records.
    pub fn arcs_at(&self, v: GridPos) -> Vec<Arc> {
        self.records(v)
            .iter()
            .map(|r| match r.direction {
                Direction::Outgoing => Arc::new(v, r.step),
                Direction::Incoming => Arc::new(
                    v.offset(-(r.step.dy() as i64), -(r.step.dx() as i64), self.dims),
                    r.step,
                ),
            })
            .collect()
    }

    /// Final acceptance test: at least one arc, every non-isolated vertex
    /// exactly 2-in/2-out, and the non-isolated vertices form one component
    /// of the underlying undirected graph.
    pub fn valid_embedding(&self) -> Result<(), EmbeddingFailure> {
        if self.arcs.is_empty() {
            return Err(EmbeddingFailure::NoArcs);
        }
        for v in self.dims.positions() {
            let (i, o) = (self.in_degree(v), self.out_degree(v));
            if (i, o) != (0, 0) && (i, o) != (2, 2) {
                return Err(EmbeddingFailure::Degree {
                    vertex: v,
                    incoming: i,
                    outgoing: o,
                });
            }
        }
        let components = self.components().len();
        if components != 1 {
            return Err(EmbeddingFailure::Disconnected { components });
        }
        Ok(())
    }

    /// Connected components of the undirected graph on non-isolated vertices.
    pub fn components(&self) -> Vec<Vec<GridPos>> {
        let n = self.dims.area();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for arc in &self.arcs {
            let a = find(&mut parent, self.dims.index(arc.origin));
            let b = find(&mut parent, self.dims.index(arc.head(self.dims)));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<GridPos>> = BTreeMap::new();
        for v in self.active_vertices() {
            let root = find(&mut parent, self.dims.index(v));
            groups.entry(root).or_default().push(v);
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort();
        out
    }
}
