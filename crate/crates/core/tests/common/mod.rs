//! Brute-force reference enumeration, written without the library's
//! geometry, path or canonical code.
//!
//! Arcs are sampled on the half-integer lattice: every intersection between
//! two lace steps lands on a point with half-integer coordinates, so two arcs
//! conflict exactly when they share such a point that is not a vertex common
//! to both of them.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub const STEPS: [(i64, i64); 8] = [
    (-1, 1),
    (0, 1),
    (1, 1),
    (0, 2),
    (1, 0),
    (-1, 0),
    (2, 0),
    (-2, 0),
];

/// `(row, col, dx, dy)`
pub type RawArc = (i64, i64, i64, i64);

#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub rows: i64,
    pub cols: i64,
}

impl Grid {
    fn wrap2(&self, p: (i64, i64)) -> (i64, i64) {
        (p.0.rem_euclid(2 * self.rows), p.1.rem_euclid(2 * self.cols))
    }

    pub fn head(&self, a: RawArc) -> (i64, i64) {
        (
            (a.0 + a.3).rem_euclid(self.rows),
            (a.1 + a.2).rem_euclid(self.cols),
        )
    }

    /// Half-lattice points along the arc, doubled and wrapped, endpoints
    /// first and last.
    fn samples(&self, a: RawArc) -> Vec<(i64, i64)> {
        let n = 2 * a.2.abs().max(a.3.abs());
        let (sx, sy) = (a.2.signum(), a.3.signum());
        (0..=n)
            .map(|k| self.wrap2((2 * a.0 + k * sy, 2 * a.1 + k * sx)))
            .collect()
    }

    /// True when the arc runs over itself on this torus.
    pub fn self_overlaps(&self, a: RawArc) -> bool {
        let s = self.samples(a);
        let interior = &s[1..s.len() - 1];
        let ends: BTreeSet<_> = [s[0], s[s.len() - 1]].into();
        let set: BTreeSet<_> = interior.iter().collect();
        set.len() < interior.len() || interior.iter().any(|p| ends.contains(p))
    }

    pub fn conflict(&self, a: RawArc, b: RawArc) -> bool {
        let sa = self.samples(a);
        let sb = self.samples(b);
        let ends_a: BTreeSet<_> = [sa[0], sa[sa.len() - 1]].into();
        let ends_b: BTreeSet<_> = [sb[0], sb[sb.len() - 1]].into();
        let pts_b: BTreeSet<_> = sb.iter().copied().collect();
        sa.iter()
            .any(|p| pts_b.contains(p) && !(ends_a.contains(p) && ends_b.contains(p)))
    }
}

fn out_slot(dx: i64, dy: i64) -> usize {
    // clockwise from north
    match (dx.signum(), dy.signum()) {
        (0, -1) => 0,
        (1, -1) => 1,
        (1, 0) => 2,
        (1, 1) => 3,
        (0, 1) => 4,
        (-1, 1) => 5,
        (-1, 0) => 6,
        (-1, -1) => 7,
        _ => unreachable!(),
    }
}

/// Every set of arcs where each vertex is 2-in/2-out or untouched, no vertex
/// slot is used twice and no two arcs conflict.
pub fn raw_solutions(g: Grid) -> Vec<Vec<RawArc>> {
    let vertices: Vec<(i64, i64)> = (0..g.rows)
        .flat_map(|r| (0..g.cols).map(move |c| (r, c)))
        .collect();
    let candidates: Vec<Vec<RawArc>> = vertices
        .iter()
        .map(|&(r, c)| {
            STEPS
                .iter()
                .map(|&(dx, dy)| (r, c, dx, dy))
                .filter(|&a| !g.self_overlaps(a))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    pick(g, &candidates, 0, &mut chosen, &mut out);
    out
}

fn pick(
    g: Grid,
    cands: &[Vec<RawArc>],
    v: usize,
    chosen: &mut Vec<RawArc>,
    out: &mut Vec<Vec<RawArc>>,
) {
    if v == cands.len() {
        if !chosen.is_empty() && degrees_ok(g, chosen) {
            let mut s = chosen.clone();
            s.sort();
            out.push(s);
        }
        return;
    }
    pick(g, cands, v + 1, chosen, out);
    let c = &cands[v];
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let (a, b) = (c[i], c[j]);
            if g.conflict(a, b) || chosen.iter().any(|&x| g.conflict(a, x) || g.conflict(b, x)) {
                continue;
            }
            chosen.push(a);
            chosen.push(b);
            if slots_ok(g, chosen) {
                pick(g, cands, v + 1, chosen, out);
            }
            chosen.pop();
            chosen.pop();
        }
    }
}

fn slots_ok(g: Grid, arcs: &[RawArc]) -> bool {
    let mut used = BTreeSet::new();
    for &a in arcs {
        let o = (a.0, a.1, out_slot(a.2, a.3));
        let h = g.head(a);
        let h = (h.0, h.1, out_slot(-a.2, -a.3));
        if !used.insert(o) || !used.insert(h) {
            return false;
        }
    }
    true
}

fn degrees_ok(g: Grid, arcs: &[RawArc]) -> bool {
    let mut indeg: BTreeMap<(i64, i64), u32> = BTreeMap::new();
    let mut outdeg: BTreeMap<(i64, i64), u32> = BTreeMap::new();
    for &a in arcs {
        *outdeg.entry((a.0, a.1)).or_default() += 1;
        *indeg.entry(g.head(a)).or_default() += 1;
    }
    outdeg
        .keys()
        .chain(indeg.keys())
        .all(|v| indeg.get(v) == Some(&2) && outdeg.get(v) == Some(&2))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Neighbour with the lifted row and column offset to reach it.
type Edge = ((i64, i64), i64, i64);

/// Connected on the torus, and the lift to the plane is connected too.
pub fn lift_connected(g: Grid, arcs: &[RawArc]) -> bool {
    let mut adj: BTreeMap<(i64, i64), Vec<Edge>> = BTreeMap::new();
    for &a in arcs {
        let h = g.head(a);
        adj.entry((a.0, a.1)).or_default().push((h, a.3, a.2));
        adj.entry(h).or_default().push(((a.0, a.1), -a.3, -a.2));
    }
    let start = *adj.keys().next().unwrap();
    let mut at = BTreeMap::from([(start, (0i64, 0i64))]);
    let mut stack = vec![start];
    let mut gens = Vec::new();
    while let Some(u) = stack.pop() {
        let pu = at[&u];
        for &(w, dr, dc) in &adj[&u] {
            let p = (pu.0 + dr, pu.1 + dc);
            match at.get(&w) {
                None => {
                    at.insert(w, p);
                    stack.push(w);
                }
                Some(q) => gens.push(((p.0 - q.0) / g.rows, (p.1 - q.1) / g.cols)),
            }
        }
    }
    if at.len() != adj.len() {
        return false;
    }
    let mut d = 0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            d = gcd(d, gens[i].0 * gens[j].1 - gens[i].1 * gens[j].0);
        }
    }
    d == 1
}

/// Orbit of an arc set under translations, both mirrors and the half turn.
pub fn orbit(g: Grid, arcs: &[RawArc]) -> BTreeSet<Vec<RawArc>> {
    let mut out = BTreeSet::new();
    for t in 0..4 {
        for dr in 0..g.rows {
            for dc in 0..g.cols {
                let mut img: Vec<RawArc> = arcs
                    .iter()
                    .map(|&(r, c, dx, dy)| {
                        // mirror columns for t & 1; mirror rows and reverse for t & 2
                        let (mut r, mut c, mut dx) = (r, c, dx);
                        if t & 1 == 1 {
                            c = -c;
                            dx = -dx;
                        }
                        if t & 2 == 2 {
                            r = -r - dy;
                            c += dx;
                            dx = -dx;
                        }
                        (
                            (r + dr).rem_euclid(g.rows),
                            (c + dc).rem_euclid(g.cols),
                            dx,
                            dy,
                        )
                    })
                    .collect();
                img.sort();
                out.insert(img);
            }
        }
    }
    out
}

/// As many arcs cross any vertical cut rightward as leftward.
pub fn conserved(arcs: &[RawArc]) -> bool {
    arcs.iter().map(|a| a.2).sum::<i64>() == 0
}

/// Raw solutions that conserve threads and have a connected planar lift.
pub fn grounds(g: Grid) -> Vec<Vec<RawArc>> {
    raw_solutions(g)
        .into_iter()
        .filter(|s| conserved(s) && lift_connected(g, s))
        .collect()
}

/// Distinct classes, each represented by the least arc list of its orbit.
pub fn classes(g: Grid) -> BTreeSet<Vec<RawArc>> {
    grounds(g)
        .into_iter()
        .map(|s| orbit(g, &s).into_iter().next().unwrap())
        .collect()
}
