//! The combinatorial anatomy of one configuration.
//!
//! Takes a configuration on the command line — a decimal id in `0..64` or a
//! six-bit string like `010010` — and walks through everything the
//! combinatorics layer derives from it: who knows what, which receiver sets
//! are acyclic or complete, the three-layer assignment, the degraded
//! sequences feeding the converse, and the tightness verdict.
//!
//!     cargo run --example classify -- 18

use gbc3::config::{
    acyclic_family, degraded_sequences, is_complete, layer_assignment, maximum_complete_sets,
    tightness_classify,
};
use gbc3::{ReceiverSet, RoutingMatrix, WeaknessScope};

fn main() -> gbc3::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "18".into());
    let a = RoutingMatrix::parse(&arg)?;

    println!("configuration {} (bits {})", a.id(), a.bit_string());
    println!();
    for i in 1..=3 {
        let known = a.known_set(i);
        if known.is_empty() {
            println!("  receiver {i} knows no other message");
        } else {
            println!("  receiver {i} knows the messages of {known}");
        }
    }

    println!();
    println!("acyclic sets (no mutual-knowledge cycle inside):");
    let acyclic = acyclic_family(&a);
    let labels: Vec<String> = acyclic.iter().map(|v| v.to_string()).collect();
    println!("  {}", labels.join(" "));

    println!();
    println!("complete sets (every member holds every non-member's message):");
    for v in ReceiverSet::all_nonempty() {
        if is_complete(&a, v) {
            println!("  {v}");
        }
    }
    let maximal = maximum_complete_sets(&a);
    let labels: Vec<String> = maximal.iter().map(|v| v.to_string()).collect();
    println!("  maximal: {}", labels.join(" "));

    println!();
    println!("layer assignment (each receiver decodes in exactly one layer):");
    let fam = layer_assignment(&a);
    for l in 1..=3 {
        let k = fam.layer(l);
        if k.is_empty() {
            println!("  layer {l}: (empty)");
        } else {
            println!("  layer {l}: {k}");
        }
    }

    println!();
    for scope in [WeaknessScope::AllPredecessors, WeaknessScope::ImmediatePredecessor] {
        let seqs = degraded_sequences(&a, scope);
        println!("degraded sequences ({scope:?} scope), {} chains:", seqs.len());
        for seq in &seqs {
            println!("  {seq}");
        }
        println!();
    }

    let verdict = tightness_classify(&a);
    if verdict.is_tight() {
        println!("tightness: {} — inner and outer bounds coincide", verdict.case);
    } else {
        println!("tightness: {} — no coincidence proof applies", verdict.case);
    }
    Ok(())
}
