//! Count lace paths by height and show the three of height one.
//!
//! cargo run --example lace_paths

use lace_ground::generate_lace_paths;
use lace_ground::path::Anchor;

fn main() {
    for p in generate_lace_paths(1).unwrap() {
        let anchor = match p.anchor() {
            Anchor::Vertex => "vertex",
            Anchor::Straddle => "straddle",
        };
        println!("{p}  ({anchor} anchor, starts at row {})", p.start_row());
    }
    for n in 1..=5 {
        println!(
            "height {n}: {} paths",
            generate_lace_paths(n).unwrap().len()
        );
    }
}
