//! Backtracking search over columns: each column roots zero, one or two lace
//! paths at its row-0 vertex.
//!
//! Two engines share the same recursion. [`enumerate`] works on precomputed
//! bitset placements and runs the top levels of the tree on a worker pool;
//! [`enumerate_reference`] clones a [`GroundEmbedding`] per branch and calls
//! [`GroundEmbedding::add_path`], and exists to cross-check the fast one.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canonical::{
    identifier, is_canonical, is_canonical_labels, prune_labels, EmbeddingId, PruneRule,
    VertexLabel,
};
use crate::embedding::GroundEmbedding;
use crate::error::LaceError;
use crate::format::serialize;
use crate::geometry::{
    arc_self_overlaps, arcs_cross, direction_slot, Arc, Endpoint, StepVector, TorusDims,
};
use crate::path::{generate_lace_paths, LacePath};
use crate::validator::check_connected;

/// Largest number of lattice points the bitset engine handles.
pub const MAX_AREA: usize = 32;

/// Which notion of connectedness a complete embedding must meet.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Connectivity {
    /// One component of the underlying undirected graph.
    Plain,
    /// One component containing a non-contractible cycle.
    NonContractible,
    /// The lift to the plane is connected: cycle windings generate Z×Z.
    #[default]
    Strict,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub dims: TorusDims,
    pub jobs: usize,
    pub prune: PruneRule,
    pub connectivity: Connectivity,
    /// Stop after this many search nodes.
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn new(dims: TorusDims) -> SearchConfig {
        SearchConfig {
            dims,
            jobs: 1,
            prune: PruneRule::Sound,
            connectivity: Connectivity::Strict,
            node_budget: None,
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn prune(mut self, rule: PruneRule) -> Self {
        self.prune = rule;
        self
    }

    pub fn connectivity(mut self, c: Connectivity) -> Self {
        self.connectivity = c;
        self
    }

    pub fn node_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// One canonical representative per class, keyed by its identifier.
    pub solutions: BTreeMap<EmbeddingId, GroundEmbedding>,
    pub nodes_visited: u64,
    pub wall_time: Duration,
    /// False when the node budget ran out.
    pub complete: bool,
}

impl SearchResult {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }

    pub fn summary(&self) -> String {
        format!(
            "solutions={} nodes={} complete={}",
            self.count(),
            self.nodes_visited,
            self.complete
        )
    }
}

type Bits = [u64; 4];

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn disjoint(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn or(a: &mut Bits, b: &Bits) {
    for (x, y) in a.iter_mut().zip(b) {
        *x |= y;
    }
}

fn arc_id(a: &Arc, dims: TorusDims) -> usize {
    dims.index(a.origin) * 8 + a.step.index()
}

fn arc_of(id: usize, dims: TorusDims) -> Arc {
    Arc::new(dims.pos_at(id / 8), StepVector::from_index(id % 8))
}

/// A lace path laid at one column, with everything needed to test and apply
/// it against a search state in a few word operations.
#[derive(Debug, Clone)]
struct Placement {
    arcs: Bits,
    slots: Bits,
    conflicts: Bits,
    /// `(vertex, slot, signed length)` for every arc end.
    ends: Vec<(usize, usize, i8)>,
    /// Vertices touched, deduplicated.
    touched: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
struct State {
    arcs: Bits,
    slots: Bits,
    indeg: [u8; MAX_AREA],
    outdeg: [u8; MAX_AREA],
    labels: [VertexLabel; MAX_AREA],
}

impl State {
    fn empty() -> State {
        State {
            arcs: [0; 4],
            slots: [0; 4],
            indeg: [0; MAX_AREA],
            outdeg: [0; MAX_AREA],
            labels: [VertexLabel::EMPTY; MAX_AREA],
        }
    }

    /// Apply `p` if it keeps slots exclusive, arcs uncrossed and degrees at
    /// most 2, and the pruning rule accepts every vertex it touched.
    fn with(&self, p: &Placement, dims: TorusDims, rule: PruneRule) -> Option<State> {
        if !disjoint(&self.slots, &p.slots) || !disjoint(&self.arcs, &p.conflicts) {
            return None;
        }
        let mut s = *self;
        for &(v, slot, len) in &p.ends {
            let deg = if len > 0 {
                &mut s.indeg[v]
            } else {
                &mut s.outdeg[v]
            };
            *deg += 1;
            if *deg > 2 {
                return None;
            }
            s.labels[v].0[slot] = len;
        }
        or(&mut s.arcs, &p.arcs);
        or(&mut s.slots, &p.slots);
        if rule != PruneRule::Off {
            let labels = &s.labels[..dims.area()];
            if !p
                .touched
                .iter()
                .all(|&v| prune_labels(labels, dims, dims.pos_at(v), rule))
            {
                return None;
            }
        }
        Some(s)
    }

    fn arcs(&self, dims: TorusDims) -> Vec<Arc> {
        (0..dims.area() * 8)
            .filter(|&i| get(&self.arcs, i))
            .map(|i| arc_of(i, dims))
            .collect()
    }
}

struct Tables {
    dims: TorusDims,
    /// Placements per column; index order follows path order.
    columns: Vec<Vec<Placement>>,
}

impl Tables {
    fn build(dims: TorusDims, paths: &[LacePath]) -> Tables {
        let ids = dims.area() * 8;
        let mut cross = vec![[0u64; 4]; ids];
        let usable: Vec<bool> = (0..ids)
            .map(|a| !arc_self_overlaps(&arc_of(a, dims), dims))
            .collect();
        for a in 0..ids {
            for b in 0..a {
                if usable[a] && usable[b] && arcs_cross(&arc_of(a, dims), &arc_of(b, dims), dims) {
                    set(&mut cross[a], b);
                    set(&mut cross[b], a);
                }
            }
        }
        let state = State::empty();
        let columns = (0..dims.cols())
            .map(|col| {
                paths
                    .iter()
                    .filter_map(|path| {
                        let arcs = path.arcs(dims, col);
                        let mut p = Placement {
                            arcs: [0; 4],
                            slots: [0; 4],
                            conflicts: [0; 4],
                            ends: Vec::with_capacity(arcs.len() * 2),
                            touched: Vec::new(),
                        };
                        for arc in &arcs {
                            let id = arc_id(arc, dims);
                            if !usable[id] || get(&p.arcs, id) {
                                return None;
                            }
                            set(&mut p.arcs, id);
                            or(&mut p.conflicts, &cross[id]);
                            let len = arc.step.length() as i8;
                            let o = dims.index(arc.origin);
                            let h = dims.index(arc.head(dims));
                            for (v, end, sign) in
                                [(o, Endpoint::Origin, -1), (h, Endpoint::Head, 1)]
                            {
                                let slot = direction_slot(arc.step, end).index();
                                if get(&p.slots, v * 8 + slot) {
                                    return None;
                                }
                                set(&mut p.slots, v * 8 + slot);
                                p.ends.push((v, slot, sign * len));
                                if !p.touched.contains(&v) {
                                    p.touched.push(v);
                                }
                            }
                        }
                        if !disjoint(&p.arcs, &p.conflicts) {
                            return None;
                        }
                        // internal degree check
                        state.with(&p, dims, PruneRule::Off)?;
                        Some(p)
                    })
                    .collect()
            })
            .collect();
        Tables { dims, columns }
    }
}

/// Columns decided by one unit of parallel work.
#[derive(Debug, Clone)]
struct WorkItem {
    state: State,
    next_col: u32,
}

struct Search<'a> {
    tables: &'a Tables,
    config: &'a SearchConfig,
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

impl Search<'_> {
    fn visit(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(budget) = self.config.node_budget {
            if n > budget {
                self.exhausted.store(true, Ordering::Relaxed);
                return false;
            }
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    /// Children of `state` at column `col`: nothing, one placement, or a
    /// pair of placements with the second later in path order.
    fn children(&self, state: &State, col: u32, mut f: impl FnMut(State)) {
        let dims = self.tables.dims;
        let rule = self.config.prune;
        f(*state);
        let placements = &self.tables.columns[col as usize];
        let fits: Vec<(usize, State)> = placements
            .iter()
            .enumerate()
            .filter_map(|(i, p)| state.with(p, dims, rule).map(|s| (i, s)))
            .collect();
        for (k, (_, one)) in fits.iter().enumerate() {
            f(*one);
            for (j, _) in &fits[k + 1..] {
                if let Some(two) = one.with(&placements[*j], dims, rule) {
                    f(two);
                }
            }
        }
    }

    fn back(&self, state: &State, col: u32, out: &mut BTreeMap<EmbeddingId, GroundEmbedding>) {
        if !self.visit() {
            return;
        }
        if col == self.tables.dims.cols() {
            if let Some((id, e)) = self.accept(state) {
                out.entry(id).or_insert(e);
            }
            return;
        }
        self.children(state, col, |child| self.back(&child, col + 1, out));
    }

    fn accept(&self, state: &State) -> Option<(EmbeddingId, GroundEmbedding)> {
        let dims = self.tables.dims;
        let area = dims.area();
        if state.arcs == [0; 4] {
            return None;
        }
        let regular = (0..area).all(|v| {
            let (i, o) = (state.indeg[v], state.outdeg[v]);
            i == o && (i == 0 || i == 2)
        });
        if !regular || !is_canonical_labels(&state.labels[..area], dims) {
            return None;
        }
        let e = GroundEmbedding::from_arcs(dims, state.arcs(dims)).expect("arc bits are distinct");
        connected(&e, self.config.connectivity).then(|| (identifier(&e), e))
    }
}

fn connected(e: &GroundEmbedding, c: Connectivity) -> bool {
    match c {
        Connectivity::Plain => e.valid_embedding().is_ok(),
        Connectivity::NonContractible => check_connected(e, false).passed(),
        Connectivity::Strict => check_connected(e, true).passed(),
    }
}

/// Run the search. The solution set does not depend on `jobs`; with a node
/// budget the partial set found before the budget ran out may.
pub fn enumerate(config: &SearchConfig) -> Result<SearchResult, LaceError> {
    let start = Instant::now();
    let dims = config.dims;
    if dims.area() > MAX_AREA {
        return Err(LaceError::GridTooLarge {
            rows: dims.rows(),
            cols: dims.cols(),
            max: MAX_AREA,
        });
    }
    let paths = generate_lace_paths(dims.rows())?;
    let tables = Tables::build(dims, &paths);
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let search = Search {
        tables: &tables,
        config,
        nodes: &nodes,
        exhausted: &exhausted,
    };

    // expand the first two columns serially into independent work items
    let depth = dims.cols().min(2);
    let mut items = vec![WorkItem {
        state: State::empty(),
        next_col: 0,
    }];
    for _ in 0..depth {
        let mut next = Vec::new();
        for item in &items {
            if !search.visit() {
                break;
            }
            search.children(&item.state, item.next_col, |child| {
                next.push(WorkItem {
                    state: child,
                    next_col: item.next_col + 1,
                })
            });
        }
        items = next;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .expect("thread pool");
    let parts: Vec<BTreeMap<EmbeddingId, GroundEmbedding>> = pool.install(|| {
        items
            .par_iter()
            .map(|item| {
                let mut found = BTreeMap::new();
                search.back(&item.state, item.next_col, &mut found);
                found
            })
            .collect()
    });
    let mut solutions = BTreeMap::new();
    for part in parts {
        for (id, e) in part {
            solutions.entry(id).or_insert(e);
        }
    }
    Ok(SearchResult {
        solutions,
        nodes_visited: nodes.load(Ordering::Relaxed),
        wall_time: start.elapsed(),
        complete: !exhausted.load(Ordering::Relaxed),
    })
}

/// Single-threaded search that clones the embedding at every branch and adds
/// paths through [`GroundEmbedding::add_path`].
pub fn enumerate_reference(config: &SearchConfig) -> Result<SearchResult, LaceError> {
    let start = Instant::now();
    let paths = generate_lace_paths(config.dims.rows())?;
    let mut nodes = 0u64;
    let mut complete = true;
    let mut solutions = BTreeMap::new();
    reference_back(
        &GroundEmbedding::new(config.dims),
        0,
        &paths,
        config,
        &mut nodes,
        &mut complete,
        &mut solutions,
    );
    Ok(SearchResult {
        solutions,
        nodes_visited: nodes,
        wall_time: start.elapsed(),
        complete,
    })
}

fn reference_back(
    e: &GroundEmbedding,
    col: u32,
    paths: &[LacePath],
    config: &SearchConfig,
    nodes: &mut u64,
    complete: &mut bool,
    out: &mut BTreeMap<EmbeddingId, GroundEmbedding>,
) {
    *nodes += 1;
    if config.node_budget.is_some_and(|b| *nodes > b) {
        *complete = false;
    }
    if !*complete {
        return;
    }
    if col == config.dims.cols() {
        if e.valid_embedding().is_ok() && connected(e, config.connectivity) && is_canonical(e) {
            out.entry(identifier(e)).or_insert_with(|| e.clone());
        }
        return;
    }
    reference_back(e, col + 1, paths, config, nodes, complete, out);
    for (i, p) in paths.iter().enumerate() {
        let mut one = e.clone();
        if one.add_path(p, col, config.prune).is_err() {
            continue;
        }
        reference_back(&one, col + 1, paths, config, nodes, complete, out);
        for q in &paths[i + 1..] {
            let mut two = one.clone();
            if two.add_path(q, col, config.prune).is_ok() {
                reference_back(&two, col + 1, paths, config, nodes, complete, out);
            }
        }
    }
}

/// Write one `ground v1` file per solution, named by the hash of its
/// canonical identifier.
pub fn write_solutions(result: &SearchResult, dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    result
        .solutions
        .iter()
        .map(|(id, e)| {
            let file = dir.join(format!("{}.gnd", id.content_hash()));
            fs::write(&file, serialize(e))?;
            Ok(file)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub rows: u32,
    pub cols: u32,
    pub count: usize,
    pub nodes: u64,
    pub complete: bool,
}

impl Cell {
    fn text(&self) -> String {
        if self.complete {
            self.count.to_string()
        } else {
            format!("≥{}*", self.count)
        }
    }
}

/// Counts for every grid up to the given bounds, rows down and columns
/// across.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub cells: Vec<Vec<Cell>>,
}

impl CountTable {
    pub fn counts(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .map(|r| r.iter().map(|c| c.count).collect())
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\\m");
        if let Some(first) = self.cells.first() {
            for c in first {
                out.push_str(&format!("\t{}", c.cols));
            }
        }
        out.push('\n');
        for row in &self.cells {
            out.push_str(&row[0].rows.to_string());
            for c in row {
                out.push('\t');
                out.push_str(&c.text());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let texts: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|r| r.iter().map(Cell::text).collect())
            .collect();
        let width = texts
            .iter()
            .flatten()
            .map(|t| t.chars().count())
            .max()
            .unwrap_or(1)
            .max(3);
        let mut out = format!("{:>4} |", "n\\m");
        if let Some(first) = self.cells.first() {
            for c in first {
                out.push_str(&format!(" {:>width$}", c.cols));
            }
        }
        out.push('\n');
        out.push_str(&"-".repeat(6 + (width + 1) * texts.first().map_or(0, Vec::len)));
        out.push('\n');
        for (row, t) in self.cells.iter().zip(&texts) {
            out.push_str(&format!("{:>4} |", row[0].rows));
            for s in t {
                let pad = width - s.chars().count();
                out.push_str(&format!(" {}{s}", " ".repeat(pad)));
            }
            out.push('\n');
        }
        if self.cells.iter().flatten().any(|c| !c.complete) {
            out.push_str("* search stopped at the node budget\n");
        }
        out
    }
}

/// Run [`enumerate`] for every cell; `base.dims` is ignored.
pub fn count_table(
    max_rows: u32,
    max_cols: u32,
    base: &SearchConfig,
) -> Result<CountTable, LaceError> {
    let mut cells = Vec::new();
    for rows in 1..=max_rows {
        let mut row = Vec::new();
        for cols in 1..=max_cols {
            let config = SearchConfig {
                dims: TorusDims::new(rows, cols)?,
                ..base.clone()
            };
            let r = enumerate(&config)?;
            row.push(Cell {
                rows,
                cols,
                count: r.count(),
                nodes: r.nodes_visited,
                complete: r.complete,
            });
        }
        cells.push(row);
    }
    Ok(CountTable { cells })
}
