//! Draw a ground tiled 4x4 times.
//!
//! cargo run --release --example render_tiling -- out.svg

use std::env;
use std::fs;

use lace_ground::render::{render_svg, RenderOptions};
use lace_ground::{enumerate, SearchConfig, TorusDims};

fn main() {
    let out = env::args().nth(1).unwrap_or_else(|| "ground.svg".into());
    let dims = TorusDims::new(3, 3).unwrap();
    let result = enumerate(&SearchConfig::new(dims)).unwrap();
    // the solution with the most arcs tends to look the most like lace
    let e = result
        .solutions
        .values()
        .max_by_key(|e| e.arc_count())
        .unwrap();
    let opts = RenderOptions {
        repeat_rows: 4,
        repeat_cols: 4,
        labels: false,
    };
    fs::write(&out, render_svg(e, &opts)).unwrap();
    println!("{} arcs per tile, written to {out}", e.arc_count());
}
