//! Translate stitch actions into braid words.
//!
//! cargo run --example braid_words -- CTC 1

use std::env;

use lace_ground::braid::{is_alternating, to_braid_word, ActionSequence};

fn main() {
    let mut args = env::args().skip(1);
    let seq: ActionSequence = args
        .next()
        .unwrap_or_else(|| "CTCpCTC".into())
        .parse()
        .unwrap();
    let pair: u32 = args.next().map_or(0, |s| s.parse().unwrap());
    let word = to_braid_word(&seq, pair);
    println!("{seq} at pair {pair}: {word}");
    println!("alternating: {}", is_alternating(&word));
}
