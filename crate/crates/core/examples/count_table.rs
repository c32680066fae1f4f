//! Reproduce the table of ground counts up to 3x3.
//!
//! cargo run --release --example count_table

use lace_ground::enumerator::count_table;
use lace_ground::{SearchConfig, TorusDims};

fn main() {
    let base = SearchConfig::new(TorusDims::new(1, 1).unwrap())
        .jobs(std::thread::available_parallelism().map_or(1, |n| n.get()));
    let table = count_table(3, 3, &base).unwrap();
    print!("{}", table.to_pretty());
}
