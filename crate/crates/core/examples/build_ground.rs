//! Assemble a ground by hand from lace paths and watch rejections.
//!
//! cargo run --example build_ground

use lace_ground::embedding::AddPathError;
use lace_ground::path::Anchor;
use lace_ground::{GroundEmbedding, LacePath, PruneRule, StepVector, TorusDims};

fn steps(v: &[(i32, i32)]) -> Vec<StepVector> {
    v.iter()
        .map(|&(dx, dy)| StepVector::new(dx, dy).unwrap())
        .collect()
}

fn main() {
    let dims = TorusDims::new(1, 1).unwrap();
    let mut e = GroundEmbedding::new(dims);

    let first = LacePath::new(steps(&[(-1, 1), (1, 0)]), 1, Anchor::Vertex).unwrap();
    e.add_path(&first, 0, PruneRule::Off).unwrap();
    println!("after {first}: {} arcs", e.arc_count());

    // same slots again: refused, and the embedding is left as it was
    match e.add_path(&first, 0, PruneRule::Off) {
        Err(AddPathError::Rejected(r)) => println!("second copy rejected: {r}"),
        other => println!("unexpected: {other:?}"),
    }
    println!("still {} arcs", e.arc_count());

    match e.valid_embedding() {
        Ok(()) => println!("valid ground embedding"),
        Err(why) => println!("not valid: {why}"),
    }
}
