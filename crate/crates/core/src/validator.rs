//! Checks for the fundamental properties of a ground embedding.
//!
//! Every failing check carries a witness that can be read back against the
//! input file: a vertex, the list of components, a directed cycle or the
//! winding vectors involved.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::embedding::{Direction, GroundEmbedding};
use crate::geometry::{Arc, GridPos, TorusDims};

pub const DEFAULT_MAX_CYCLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A precondition check failed, so this one was not run.
    Blocked,
    /// The search bound was hit before a decision.
    Inconclusive,
}

/// Net wraps of a closed walk: `longitudinal` around the columns,
/// `meridional` around the rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WindingVector {
    pub longitudinal: i64,
    pub meridional: i64,
}

impl WindingVector {
    pub fn is_zero(&self) -> bool {
        self.longitudinal == 0 && self.meridional == 0
    }
}

impl fmt::Display for WindingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.longitudinal, self.meridional)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex {
        vertex: GridPos,
    },
    Components {
        components: Vec<Vec<GridPos>>,
    },
    Cycle {
        arcs: Vec<Arc>,
        displacement: (i64, i64),
    },
    Windings {
        windings: Vec<WindingVector>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn pass() -> CheckResult {
        CheckResult {
            status: Status::Pass,
            detail: None,
            witness: None,
        }
    }

    fn fail(detail: impl Into<String>, witness: Option<Witness>) -> CheckResult {
        CheckResult {
            status: Status::Fail,
            detail: Some(detail.into()),
            witness,
        }
    }

    fn blocked(on: &str) -> CheckResult {
        CheckResult {
            status: Status::Blocked,
            detail: Some(format!("requires {on}")),
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Circuits of the non-transverse decomposition, each listed from its least
/// arc.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CircuitPartition {
    pub circuits: Vec<Vec<Arc>>,
    pub windings: Vec<WindingVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub version: u32,
    pub two_regular: CheckResult,
    pub connected: CheckResult,
    pub strict_connected: CheckResult,
    pub rotationally_consecutive: CheckResult,
    pub no_contractible_directed_cycle: CheckResult,
    pub conserved: CheckResult,
    pub circuits: Option<CircuitPartition>,
    /// Whether `strict_connected` counts towards [`PropertyReport::all_pass`].
    pub strict: bool,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        let mut checks = vec![
            &self.two_regular,
            &self.connected,
            &self.rotationally_consecutive,
            &self.no_contractible_directed_cycle,
            &self.conserved,
        ];
        if self.strict {
            checks.push(&self.strict_connected);
        }
        checks.iter().all(|c| c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let rows = [
            ("two_regular", &self.two_regular),
            ("connected", &self.connected),
            ("strict_connected", &self.strict_connected),
            ("rotationally_consecutive", &self.rotationally_consecutive),
            (
                "no_contractible_directed_cycle",
                &self.no_contractible_directed_cycle,
            ),
            ("conserved", &self.conserved),
        ];
        for (name, check) in rows {
            let status = match check.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Blocked => "blocked",
                Status::Inconclusive => "inconclusive",
            };
            write!(out, "{name}: {status}").unwrap();
            if let Some(d) = &check.detail {
                write!(out, " ({d})").unwrap();
            }
            out.push('\n');
            if let Some(Witness::Cycle { arcs, .. }) = &check.witness {
                let list: Vec<String> = arcs.iter().map(|a| a.to_string()).collect();
                writeln!(out, "  cycle: {}", list.join(" -> ")).unwrap();
            }
        }
        if let Some(p) = &self.circuits {
            writeln!(out, "circuits: {}", p.circuits.len()).unwrap();
            for (c, w) in p.circuits.iter().zip(&p.windings) {
                writeln!(out, "  {} arcs, winding {w}", c.len()).unwrap();
            }
        }
        writeln!(
            out,
            "result: {}",
            if self.all_pass() { "pass" } else { "FAIL" }
        )
        .unwrap();
        out
    }
}

pub fn check_two_regular(e: &GroundEmbedding) -> CheckResult {
    if e.arc_count() == 0 {
        return CheckResult::fail("no arcs", None);
    }
    for v in e.dims().positions() {
        let (i, o) = (e.in_degree(v), e.out_degree(v));
        if (i, o) != (0, 0) && (i, o) != (2, 2) {
            return CheckResult::fail(
                format!("vertex {v} is {i}-in/{o}-out"),
                Some(Witness::Vertex { vertex: v }),
            );
        }
    }
    CheckResult::pass()
}

/// Winding of the fundamental cycle closed by each non-tree arc of a BFS
/// spanning forest, lifted to the universal cover.
pub fn fundamental_windings(e: &GroundEmbedding) -> Vec<WindingVector> {
    let dims = e.dims();
    let n = dims.area();
    let mut lift: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut tree = std::collections::BTreeSet::new();
    for root in e.active_vertices() {
        if lift[dims.index(root)].is_some() {
            continue;
        }
        lift[dims.index(root)] = Some((root.row as i64, root.col as i64));
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let (ur, uc) = lift[dims.index(u)].unwrap();
            for (arc, out) in incident(e, u) {
                let sign = if out { 1 } else { -1 };
                let w = if out { arc.head(dims) } else { arc.origin };
                let wi = dims.index(w);
                if lift[wi].is_none() {
                    lift[wi] = Some((
                        ur + sign * arc.step.dy() as i64,
                        uc + sign * arc.step.dx() as i64,
                    ));
                    tree.insert(arc);
                    queue.push_back(w);
                }
            }
        }
    }
    e.arcs()
        .filter(|a| !tree.contains(*a))
        .map(|a| {
            let (or, oc) = lift[dims.index(a.origin)].unwrap();
            let (hr, hc) = lift[dims.index(a.head(dims))].unwrap();
            let dr = or + a.step.dy() as i64 - hr;
            let dc = oc + a.step.dx() as i64 - hc;
            WindingVector {
                longitudinal: dc / dims.cols() as i64,
                meridional: dr / dims.rows() as i64,
            }
        })
        .collect()
}

fn incident(e: &GroundEmbedding, v: GridPos) -> impl Iterator<Item = (Arc, bool)> + '_ {
    let outgoing: Vec<bool> = e
        .records(v)
        .iter()
        .map(|r| r.direction == Direction::Outgoing)
        .collect();
    e.arcs_at(v).into_iter().zip(outgoing)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Index of the subgroup of Z×Z spanned by `vs`, or 0 if it has rank < 2.
pub fn lattice_index(vs: &[WindingVector]) -> i64 {
    let mut g = 0;
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            g = gcd(
                g,
                a.longitudinal * b.meridional - a.meridional * b.longitudinal,
            );
        }
    }
    g
}

/// Non-strict: one component with at least one non-contractible cycle.
/// Strict: additionally the cycle windings generate all of Z×Z, which is what
/// it takes for the lift to the plane to be connected.
pub fn check_connected(e: &GroundEmbedding, strict: bool) -> CheckResult {
    if e.arc_count() == 0 {
        return CheckResult::fail("no arcs", None);
    }
    let components = e.components();
    if components.len() != 1 {
        return CheckResult::fail(
            format!("{} components", components.len()),
            Some(Witness::Components { components }),
        );
    }
    let windings = fundamental_windings(e);
    let nonzero: Vec<WindingVector> = windings.iter().copied().filter(|w| !w.is_zero()).collect();
    if nonzero.is_empty() {
        return CheckResult::fail(
            "every cycle is contractible",
            Some(Witness::Windings { windings }),
        );
    }
    if strict {
        let index = lattice_index(&nonzero);
        if index != 1 {
            let detail = if index == 0 {
                "cycle windings span a rank-1 subgroup".to_string()
            } else {
                format!("cycle windings span a subgroup of index {index}")
            };
            return CheckResult::fail(detail, Some(Witness::Windings { windings: nonzero }));
        }
    }
    CheckResult::pass()
}

/// Directions of the records around `v` in slot order, or `None` if two
/// records share a slot.
fn cyclic_directions(e: &GroundEmbedding, v: GridPos) -> Option<Vec<Direction>> {
    let recs = e.records(v);
    if recs.windows(2).any(|w| w[0].slot == w[1].slot) {
        return None;
    }
    Some(recs.iter().map(|r| r.direction).collect())
}

pub fn check_rotationally_consecutive(e: &GroundEmbedding) -> CheckResult {
    if !check_two_regular(e).passed() {
        return CheckResult::blocked("two_regular");
    }
    for v in e.active_vertices() {
        let ok = cyclic_directions(e, v)
            .is_some_and(|d| (0..4).filter(|&i| d[i] != d[(i + 1) % 4]).count() == 2);
        if !ok {
            return CheckResult::fail(
                format!("vertex {v} is not in,in,out,out in cyclic order"),
                Some(Witness::Vertex { vertex: v }),
            );
        }
    }
    CheckResult::pass()
}

fn winding_of(arcs: &[Arc], dims: TorusDims) -> WindingVector {
    let dx: i64 = arcs.iter().map(|a| a.step.dx() as i64).sum();
    let dy: i64 = arcs.iter().map(|a| a.step.dy() as i64).sum();
    WindingVector {
        longitudinal: dx / dims.cols() as i64,
        meridional: dy / dims.rows() as i64,
    }
}

/// Split the arcs into circuits that never cross at a vertex: an arc entering
/// a vertex leaves along the outgoing arc next to it in cyclic order.
/// Returns `None` when the embedding is not 2-regular and rotationally
/// consecutive.
pub fn partition_circuits(e: &GroundEmbedding) -> Option<CircuitPartition> {
    if e.arc_count() == 0 {
        return Some(CircuitPartition::default());
    }
    if !check_rotationally_consecutive(e).passed() {
        return None;
    }
    let dims = e.dims();
    let arcs: Vec<Arc> = e.arcs().copied().collect();
    let id = |a: &Arc| arcs.binary_search(a).expect("arc belongs to the embedding");
    let mut next = vec![usize::MAX; arcs.len()];
    for v in e.active_vertices() {
        let recs = e.records(v);
        let around = e.arcs_at(v);
        for i in 0..4 {
            if recs[i].direction != Direction::Incoming {
                continue;
            }
            // each incoming arc has exactly one outgoing neighbour in cyclic order
            let j = if recs[(i + 1) % 4].direction == Direction::Outgoing {
                (i + 1) % 4
            } else {
                (i + 3) % 4
            };
            next[id(&around[i])] = id(&around[j]);
        }
    }
    let mut used = vec![false; arcs.len()];
    let mut partition = CircuitPartition::default();
    for start in 0..arcs.len() {
        if used[start] {
            continue;
        }
        let mut circuit = Vec::new();
        let mut a = start;
        while !used[a] {
            used[a] = true;
            circuit.push(arcs[a]);
            a = next[a];
        }
        partition.windings.push(winding_of(&circuit, dims));
        partition.circuits.push(circuit);
    }
    Some(partition)
}

/// The cycle search gave up before finishing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleBudgetExceeded;

/// Simple directed cycles with zero total displacement. Every step moves
/// down or sideways, so such a cycle uses horizontal arcs only and the search
/// runs on that subgraph. Gives up after examining `max_cycles` simple cycles.
pub fn contractible_cycle(
    e: &GroundEmbedding,
    max_cycles: usize,
) -> Result<Option<Vec<Arc>>, CycleBudgetExceeded> {
    let dims = e.dims();
    let horizontal: Vec<Arc> = e
        .arcs()
        .copied()
        .filter(|a| a.step.is_horizontal())
        .collect();
    let mut out_arcs: Vec<Vec<Arc>> = vec![Vec::new(); dims.area()];
    for a in &horizontal {
        out_arcs[dims.index(a.origin)].push(*a);
    }
    let mut seen = 0usize;
    for start in 0..dims.area() {
        let mut path: Vec<Arc> = Vec::new();
        let mut on_path = vec![false; dims.area()];
        on_path[start] = true;
        if let Some(c) = cycles_from(
            start,
            start,
            dims,
            &out_arcs,
            &mut path,
            &mut on_path,
            &mut seen,
            max_cycles,
        )? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn cycles_from(
    start: usize,
    at: usize,
    dims: TorusDims,
    out_arcs: &[Vec<Arc>],
    path: &mut Vec<Arc>,
    on_path: &mut [bool],
    seen: &mut usize,
    max: usize,
) -> Result<Option<Vec<Arc>>, CycleBudgetExceeded> {
    for a in &out_arcs[at] {
        let w = dims.index(a.head(dims));
        if w < start {
            continue;
        }
        path.push(*a);
        if w == start {
            *seen += 1;
            if *seen > max {
                return Err(CycleBudgetExceeded);
            }
            if path.iter().map(|a| a.step.dx() as i64).sum::<i64>() == 0 {
                return Ok(Some(path.clone()));
            }
        } else if !on_path[w] {
            on_path[w] = true;
            let found = cycles_from(start, w, dims, out_arcs, path, on_path, seen, max)?;
            on_path[w] = false;
            if found.is_some() {
                return Ok(found);
            }
        }
        path.pop();
    }
    Ok(None)
}

pub fn check_no_contractible_directed_cycles(
    e: &GroundEmbedding,
    max_cycles: usize,
) -> CheckResult {
    match contractible_cycle(e, max_cycles) {
        Ok(None) => CheckResult::pass(),
        Ok(Some(arcs)) => CheckResult::fail(
            format!(
                "directed cycle of {} arcs with displacement (0,0)",
                arcs.len()
            ),
            Some(Witness::Cycle {
                arcs,
                displacement: (0, 0),
            }),
        ),
        Err(CycleBudgetExceeded) => CheckResult {
            status: Status::Inconclusive,
            detail: Some(format!("more than {max_cycles} simple cycles")),
            witness: None,
        },
    }
}

/// Signed number of times `arcs` cross the vertical line just left of column
/// `cut`, rightward counted positive.
pub fn cut_crossings(arcs: &[Arc], dims: TorusDims, cut: u32) -> i64 {
    let m = dims.cols() as i64;
    // crossings of x = cut + j*m for x in (x0, x1]
    let count =
        |lo: i64, hi: i64| (hi - cut as i64).div_euclid(m) - (lo - cut as i64).div_euclid(m);
    arcs.iter()
        .map(|a| {
            let x0 = a.origin.col as i64;
            let x1 = x0 + a.step.dx() as i64;
            if x1 >= x0 {
                count(x0, x1)
            } else {
                -count(x1, x0)
            }
        })
        .sum()
}

pub fn check_thread_conservation(e: &GroundEmbedding) -> CheckResult {
    let Some(p) = partition_circuits(e).filter(|_| e.arc_count() > 0) else {
        return CheckResult::blocked("rotationally_consecutive");
    };
    let windings = p.windings.clone();
    if let Some(w) = windings.iter().find(|w| w.longitudinal != 0) {
        return CheckResult::fail(
            format!("a circuit wraps longitudinally {} times", w.longitudinal),
            Some(Witness::Windings { windings }),
        );
    }
    if windings.windows(2).any(|w| w[0] != w[1]) {
        return CheckResult::fail(
            "circuits wrap differently",
            Some(Witness::Windings { windings }),
        );
    }
    CheckResult::pass()
}

pub fn full_report(e: &GroundEmbedding, strict: bool, max_cycles: usize) -> PropertyReport {
    let two_regular = check_two_regular(e);
    let circuits = if two_regular.passed() {
        partition_circuits(e)
    } else {
        None
    };
    PropertyReport {
        version: 1,
        connected: check_connected(e, false),
        strict_connected: check_connected(e, true),
        rotationally_consecutive: check_rotationally_consecutive(e),
        no_contractible_directed_cycle: check_no_contractible_directed_cycles(e, max_cycles),
        conserved: check_thread_conservation(e),
        circuits,
        two_regular,
        strict,
    }
}
