//! Symmetric copies of a ground share one identifier.
//!
//! cargo run --example canonical_form

use lace_ground::canonical::{canonical_representative, identifier, transform, translate};
use lace_ground::{canonical_id, enumerate, is_canonical, SearchConfig, TorusDims, Transform};

fn main() {
    let dims = TorusDims::new(2, 3).unwrap();
    let result = enumerate(&SearchConfig::new(dims)).unwrap();
    let (id, e) = result.solutions.iter().nth(7).unwrap();
    println!("canonical  {id}");
    println!("hash       {}", id.content_hash());

    for t in Transform::ALL {
        let moved = translate(&transform(e, t), 1, 2);
        println!(
            "{t:?} + shift: {}  canonical={}  same class={}",
            identifier(&moved),
            is_canonical(&moved),
            canonical_id(&moved) == *id
        );
    }
    let back = canonical_representative(&translate(e, 1, 1));
    println!("representative recovered: {}", back == *e);
}
