//! Check two hand-written grounds: one sound, one with a contractible loop.
//!
//! cargo run --example verify_ground

use lace_ground::format::deserialize;
use lace_ground::full_report;
use lace_ground::validator::DEFAULT_MAX_CYCLES;

const SOUND: &str = "\
ground v1
dims 1 1
arc 0 0 -1 1
arc 0 0 1 0
";

// two horizontal arcs that close up without leaving the tile
const LOOPED: &str = "\
ground v1
dims 1 2
arc 0 0 1 0
arc 0 1 -1 0
arc 0 0 0 1
arc 0 1 0 1
";

fn main() {
    for (name, text) in [("sound", SOUND), ("looped", LOOPED)] {
        let e = deserialize(text).unwrap();
        let report = full_report(&e, true, DEFAULT_MAX_CYCLES);
        println!("== {name}\n{}", report.to_text());
    }
}
