mod common;

use std::collections::BTreeSet;

use common::{classes, grounds, orbit, raw_solutions, Grid, RawArc};
use lace_ground::canonical::canonical_id;
use lace_ground::enumerator::{enumerate, SearchConfig};
use lace_ground::{Arc, EmbeddingId, GridPos, GroundEmbedding, PruneRule, StepVector, TorusDims};

fn to_embedding(g: Grid, arcs: &[RawArc]) -> GroundEmbedding {
    let dims = TorusDims::new(g.rows as u32, g.cols as u32).unwrap();
    GroundEmbedding::from_arcs(
        dims,
        arcs.iter().map(|&(r, c, dx, dy)| {
            Arc::new(
                GridPos {
                    row: r as u32,
                    col: c as u32,
                },
                StepVector::new(dx as i32, dy as i32).unwrap(),
            )
        }),
    )
    .unwrap()
}

fn oracle_ids(g: Grid) -> BTreeSet<EmbeddingId> {
    classes(g)
        .iter()
        .map(|s| canonical_id(&to_embedding(g, s)))
        .collect()
}

fn search_ids(g: Grid, prune: PruneRule) -> BTreeSet<EmbeddingId> {
    let dims = TorusDims::new(g.rows as u32, g.cols as u32).unwrap();
    enumerate(&SearchConfig::new(dims).prune(prune))
        .unwrap()
        .solutions
        .into_keys()
        .collect()
}

const GRIDS: [(i64, i64); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

#[test]
fn backtracker_matches_brute_force() {
    for (rows, cols) in GRIDS {
        let g = Grid { rows, cols };
        let oracle = oracle_ids(g);
        assert_eq!(oracle, search_ids(g, PruneRule::Sound), "{rows}x{cols}");
        assert_eq!(
            oracle,
            search_ids(g, PruneRule::Off),
            "{rows}x{cols} unpruned"
        );
    }
}

#[test]
fn oracle_reproduces_small_counts() {
    let counts: Vec<usize> = GRIDS
        .iter()
        .map(|&(rows, cols)| classes(Grid { rows, cols }).len())
        .collect();
    assert_eq!(counts, vec![1, 2, 4, 12]);
}

#[test]
fn orbit_sizes_add_up_to_raw_count() {
    for (rows, cols) in GRIDS {
        let g = Grid { rows, cols };
        let raw: BTreeSet<Vec<RawArc>> = grounds(g).into_iter().collect();
        let total: usize = classes(g).iter().map(|c| orbit(g, c).len()).sum();
        assert_eq!(total, raw.len(), "{rows}x{cols}");
        // raw solutions are closed under the symmetry group
        for s in &raw {
            assert!(orbit(g, s).is_subset(&raw));
        }
    }
}

#[test]
fn unconserved_sets_exist_without_path_structure() {
    // <1,0> and <1,1> on one vertex: legal slots, no crossings, but both wrap east
    let g = Grid { rows: 1, cols: 1 };
    assert!(raw_solutions(g).contains(&vec![(0, 0, 1, 0), (0, 0, 1, 1)]));
    assert!(!common::conserved(&[(0, 0, 1, 1), (0, 0, 1, 0)]));
}

#[test]
fn oracle_geometry_agrees_with_library() {
    for (rows, cols) in [(1, 1), (1, 2), (2, 2), (3, 3), (2, 3)] {
        let g = Grid { rows, cols };
        let dims = TorusDims::new(rows as u32, cols as u32).unwrap();
        let arcs: Vec<RawArc> = (0..rows)
            .flat_map(|r| {
                (0..cols)
                    .flat_map(move |c| common::STEPS.iter().map(move |&(dx, dy)| (r, c, dx, dy)))
            })
            .collect();
        let lib = |a: RawArc| to_embedding(g, &[a]).arcs().next().copied().unwrap();
        for &a in &arcs {
            assert_eq!(
                g.self_overlaps(a),
                lace_ground::geometry::arc_self_overlaps(&lib(a), dims),
                "{a:?} on {rows}x{cols}"
            );
            for &b in &arcs {
                if a == b || g.self_overlaps(a) || g.self_overlaps(b) {
                    continue;
                }
                assert_eq!(
                    g.conflict(a, b),
                    lace_ground::geometry::arcs_cross(&lib(a), &lib(b), dims),
                    "{a:?} vs {b:?} on {rows}x{cols}"
                );
            }
        }
    }
}
