//! Converse membership and minimal chain powers.
//!
//! Every degraded sequence of receiver groups puts a price on a rate tuple:
//! each group must push its sum rate past its strongest member's noise plus
//! all power spent on earlier groups, so the cheapest split is greedy and
//! membership in the outer bound is a closed-form budget check per chain.
//! This example walks the accounting for the no-side-information
//! configuration, finds the boundary along the tuple's own ray, and
//! certifies points just inside and just outside of it.
//!
//!     cargo run --example outer_membership

use gbc3::config::degraded_sequences;
use gbc3::outer::{is_achievable_outer, minimal_powers_for_sequence, outer_radial};
use gbc3::{Channel, LogBase, RateTuple, RoutingMatrix, WeaknessScope, WeightVector};

fn main() -> gbc3::Result<()> {
    let a = RoutingMatrix::from_id(0)?; // nobody knows anything
    let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two)?;
    let scope = WeaknessScope::AllPredecessors;
    let r = RateTuple([ch.cap(5.0), 1.0, 0.5]);

    println!(
        "configuration {}, P = {}, candidate rates ({:.6}, {}, {})",
        a.id(),
        ch.p(),
        r.rate(1),
        r.rate(2),
        r.rate(3)
    );
    println!();

    // The binding chain is the full stack {1} -> {2} -> {3}; show its greedy
    // power accounting in full.
    let seqs = degraded_sequences(&a, scope);
    let stack = seqs
        .iter()
        .find(|s| s.len() == 3)
        .expect("the full stack is always a chain here");
    println!("chain {stack}: greedy minimal powers");
    let powers = minimal_powers_for_sequence(stack, &ch, r);
    let mut spent = 0.0;
    for (group, p_j) in stack.groups().iter().zip(&powers) {
        println!(
            "  group {group}: ({:.4} effective noise) -> needs {p_j:.4}",
            group.iter().map(|i| ch.noise(i)).fold(f64::INFINITY, f64::min) + spent
        );
        spent += p_j;
    }
    println!("  total {spent:.4} vs budget {} -> chain {}", ch.p(), if spent <= ch.p() { "clears" } else { "rejects" });
    println!();

    // Every chain must clear for membership; here the stack alone rejects.
    println!(
        "is_achievable_outer: {}",
        is_achievable_outer(&a, &ch, r, 1e-9, scope)
    );
    println!();

    // Walk the same ray to the boundary and probe both sides of it.
    let dir = WeightVector::new(r.0)?;
    let t = outer_radial(&a, &ch, &dir, scope);
    let boundary = r.scale(t);
    println!(
        "boundary along this ray: t* = {t:.6}, point ({:.6}, {:.6}, {:.6})",
        boundary.rate(1),
        boundary.rate(2),
        boundary.rate(3)
    );
    for (label, factor) in [("inside ", 0.999), ("outside", 1.001)] {
        let probe = boundary.scale(factor);
        println!(
            "  {label} (x{factor}): is_achievable_outer = {}",
            is_achievable_outer(&a, &ch, probe, 1e-9, scope)
        );
    }
    println!();
    println!(
        "{} chains checked in total for this configuration",
        seqs.len()
    );
    Ok(())
}
