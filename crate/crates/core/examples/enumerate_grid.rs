//! Enumerate every ground on a small torus and write them out.
//!
//! cargo run --release --example enumerate_grid -- 3 2 [out-dir]

use std::env;
use std::path::PathBuf;

use lace_ground::enumerator::write_solutions;
use lace_ground::{enumerate, SearchConfig, TorusDims};

fn main() {
    let args: Vec<String> = env::args().skip(1).collect();
    let rows = args.first().map_or(2, |s| s.parse().expect("rows"));
    let cols = args.get(1).map_or(2, |s| s.parse().expect("cols"));
    let dims = TorusDims::new(rows, cols).unwrap();

    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let result = enumerate(&SearchConfig::new(dims).jobs(jobs)).unwrap();
    println!(
        "{}x{}: {} ({:.2?})",
        rows,
        cols,
        result.summary(),
        result.wall_time
    );
    for id in result.solutions.keys().take(5) {
        println!("  {id}");
    }

    if let Some(dir) = args.get(2).map(PathBuf::from) {
        let files = write_solutions(&result, &dir).unwrap();
        println!("wrote {} files to {}", files.len(), dir.display());
    }
}
