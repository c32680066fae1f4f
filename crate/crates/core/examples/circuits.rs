//! Split a ground into thread circuits and read off their windings.
//!
//! cargo run --example circuits

use lace_ground::validator::{cut_crossings, partition_circuits};
use lace_ground::{enumerate, SearchConfig, TorusDims};

fn main() {
    let dims = TorusDims::new(3, 3).unwrap();
    let result = enumerate(&SearchConfig::new(dims)).unwrap();
    for e in result.solutions.values().rev().take(3) {
        let p = partition_circuits(e).expect("solutions are 2-regular");
        println!("{} arcs in {} circuits", e.arc_count(), p.circuits.len());
        for (c, w) in p.circuits.iter().zip(&p.windings) {
            let cuts: Vec<i64> = (0..dims.cols())
                .map(|k| cut_crossings(c, dims, k))
                .collect();
            println!("  winding {w}, net crossings per cut {cuts:?}");
        }
    }
}
